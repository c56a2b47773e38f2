#include "chase/pbc_engine.hpp"

#include <algorithm>
#include <cmath>

namespace chase {

namespace {
constexpr double kMuTol = 1e-10;
constexpr int kMaxBisect = 200;
}  // namespace

const char* step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::kCovering: return "covering";
    case StepKind::kPacking: return "packing";
    case StepKind::kDepart: return "depart";
  }
  return "?";
}

Chaser::Chaser(int n, double eps, int d) : n_(n), eps_(eps), d_(d), x_(n, 0.0) {
  if (n < 0 || n > kMaxGround) throw input_error("chaser: ground set size out of range");
  if (!(eps > 0.0 && eps < 1.0)) throw input_error("chaser: eps must be in (0,1)");
  if (d < 1) throw input_error("chaser: d must be >= 1");
}

double Chaser::record(StepKind kind, double movement) {
  ledger_ += movement;
  log_.push_back(StepLogEntry{time_, kind, movement, ledger_});
  return movement;
}

void Chaser::check_halfspace(const Halfspace& h) const {
  if (h.coeffs.empty()) throw input_error("halfspace: empty support");
  if (!(h.bound > 0.0)) throw input_error("halfspace: bound must be positive");
  for (auto [i, a] : h.coeffs) {
    if (i < 0 || i >= n_) throw input_error("halfspace: index out of range");
    if (!(a > 0.0)) throw input_error("halfspace: coefficients must be positive");
  }
}

double Chaser::apply_covering(const Halfspace& h) {
  check_halfspace(h);
  const double b = h.bound;

  double sum_a = 0.0;
  for (auto [i, a] : h.coeffs) sum_a += a;
  if (sum_a < b - 1e-12) {
    throw infeasible_error("apply_covering: bound unreachable even at x = 1 on support");
  }

  // x_i(mu) = min(1, (x_i + delta_i) e^{a_i mu} - delta_i) with per-element
  // shift delta_i = eps*b/(d*a_i); the cap threshold keeps exp() bounded.
  const std::size_t m = h.coeffs.size();
  std::vector<double> delta(m), cap_mu(m);
  for (std::size_t k = 0; k < m; ++k) {
    auto [i, a] = h.coeffs[k];
    delta[k] = eps_ * b / (d_ * a);
    cap_mu[k] = std::log((1.0 + delta[k]) / (x_[i] + delta[k])) / a;
  }
  const double mu_max = *std::max_element(cap_mu.begin(), cap_mu.end());

  auto coord_at = [&](std::size_t k, double mu) {
    if (mu >= cap_mu[k]) return 1.0;
    auto [i, a] = h.coeffs[k];
    return std::min(1.0, (x_[i] + delta[k]) * std::exp(a * mu) - delta[k]);
  };
  auto dot_at = [&](double mu) {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += h.coeffs[k].second * coord_at(k, mu);
    return s;
  };

  double mu = 0.0;
  if (dot_at(0.0) < b) {
    double lo = 0.0, hi = mu_max;
    for (int it = 0; it < kMaxBisect && hi - lo > kMuTol; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (dot_at(mid) < b) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    mu = hi;  // first point at or above the bound
  }

  double movement = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const int i = h.coeffs[k].first;
    const double nx = std::max(x_[i], coord_at(k, mu));
    movement += nx - x_[i];
    x_[i] = nx;
  }
  return record(StepKind::kCovering, movement);
}

double Chaser::apply_packing(const Halfspace& h) {
  check_halfspace(h);
  const double b = h.bound;

  auto dot_at = [&](double mu) {
    double s = 0.0;
    for (auto [i, a] : h.coeffs) s += a * x_[i] * std::exp(-a * mu);
    return s;
  };

  double mu = 0.0;
  if (dot_at(0.0) > b) {
    double hi = 1.0;
    int guard = 0;
    while (dot_at(hi) > b && ++guard < kMaxBisect) hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < kMaxBisect && hi - lo > kMuTol; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (dot_at(mid) > b) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    mu = hi;
  }

  double movement = 0.0;
  for (auto [i, a] : h.coeffs) {
    const double nx = std::min(x_[i], x_[i] * std::exp(-a * mu));
    movement += x_[i] - nx;
    x_[i] = nx;
  }
  return record(StepKind::kPacking, movement);
}

double Chaser::zero_departed(ElemMask departed) {
  if (n_ < 64 && (departed >> n_) != 0) throw input_error("zero_departed: element out of range");
  double movement = 0.0;
  for_each_element(departed, [&](int i) {
    movement += x_[i];
    x_[i] = 0.0;
  });
  return record(StepKind::kDepart, movement);
}

}  // namespace chase
