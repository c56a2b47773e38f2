#include "chase/aos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chase/rounding.hpp"

namespace chase {

WitnessSample sample_threshold_set(const FractionalPoint& x, Rng& rng) {
  WitnessSample w;
  w.t = rng.uniform();
  w.wolsey_value = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0.0) continue;  // Y_i infinite
    if (rng.exponential(x[i]) <= w.t) w.set |= singleton(static_cast<int>(i));
  }
  return w;
}

std::optional<WitnessSample> find_witness(const SetFunction& f,
                                          const FractionalPoint& x, double v,
                                          double eps, int trials, Rng& rng,
                                          Exec exec) {
  if (!(v > 0.0)) throw input_error("find_witness: v must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw input_error("find_witness: eps must be in (0,1)");
  if (trials < 1) throw input_error("find_witness: trials must be >= 1");

  const double threshold = (1.0 - eps / 2.0) * v;
  // One draw from the caller's stream salts all trial substreams, so the
  // outcome is identical for any thread count (lowest trial index wins).
  const Rng base(rng.next_u64());

  auto run_trial = [&](int j) -> std::pair<bool, WitnessSample> {
    Rng r = base.substream(static_cast<std::uint64_t>(j));
    WitnessSample w = sample_threshold_set(x, r);
    w.wolsey_value = wolsey_value_at(f, w.set, x);
    return {w.wolsey_value <= threshold, w};
  };

  if (!par::use_parallel(exec, static_cast<std::int64_t>(trials) * (set_size(support(x)) + 1))) {
    for (int j = 0; j < trials; ++j) {
      auto [ok, w] = run_trial(j);
      if (ok) return w;
    }
    return std::nullopt;
  }

  constexpr int kBlock = 64;
  for (int lo = 0; lo < trials; lo += kBlock) {
    const int hi = std::min(trials, lo + kBlock);
    std::vector<char> ok(hi - lo, 0);
    std::vector<WitnessSample> ws(hi - lo);
#pragma omp parallel for schedule(static)
    for (int j = lo; j < hi; ++j) {
      auto [o, w] = run_trial(j);
      ok[j - lo] = o ? 1 : 0;
      ws[j - lo] = w;
    }
    for (int j = 0; j < hi - lo; ++j) {
      if (ok[j]) return ws[j];
    }
  }
  return std::nullopt;
}

Halfspace truncated_value_row(const SetFunction& f, ElemMask witness,
                              ElemMask available, double v) {
  const double residual = v - f.value(witness);
  if (!(residual > 0.0)) {
    throw internal_error("truncated_value_row: witness already reaches the target");
  }
  Halfspace h;
  h.kind = HalfspaceKind::kCovering;
  h.bound = 1.0;
  for_each_element(available & ~witness, [&](int i) {
    const double m = f.marginal(i, witness);
    if (m > 0.0) h.coeffs.emplace_back(i, std::min(residual, m) / residual);
  });
  return h;
}

namespace {

double row_mass(const Halfspace& h) {
  double s = 0.0;
  for (auto [i, a] : h.coeffs) s += a;
  return s;
}

Halfspace truncated_linear_row(const std::vector<double>& w, double bound,
                               ElemMask available) {
  Halfspace h;
  h.kind = HalfspaceKind::kCovering;
  h.bound = 1.0;
  for_each_element(available, [&](int i) {
    if (w[i] > 0.0) h.coeffs.emplace_back(i, std::min(w[i], bound) / bound);
  });
  return h;
}

}  // namespace

SeparationStats run_separation_loop(Chaser& chaser, const SetFunction& f,
                                    const PartitionConstraint& c,
                                    const SeparationOptions& opt, Rng* rng) {
  SeparationStats stats;
  const double eps = opt.eps;
  const ElemMask avail = opt.available ? opt.available : full_mask(f.ground_size());

  for (long round = 0; round < opt.max_rounds; ++round) {
    // Packing side: one part at a time, most violated first.
    if (auto viol = c.fractional_violation(chaser.point(), eps)) {
      Halfspace h;
      h.kind = HalfspaceKind::kPacking;
      h.bound = static_cast<double>(c.caps()[viol->part]);
      for_each_element(c.parts()[viol->part], [&](int i) { h.coeffs.emplace_back(i, 1.0); });
      const double moved = chaser.apply_packing(h);
      if (moved < eps * h.bound / 2.0) {
        throw internal_error("packing fix moved less than the violation demands");
      }
      ++stats.packing;
      continue;
    }

    // Extra exactly-checked linear covering rows.
    bool fired = false;
    for (const auto& [w, bound] : opt.linear_rows) {
      if (!(bound > 0.0)) continue;
      double dot = 0.0;
      for_each_element(avail, [&](int i) { dot += w[i] * chaser.point()[i]; });
      if (dot >= (1.0 - eps) * bound) continue;
      Halfspace h = truncated_linear_row(w, bound, avail);
      if (row_mass(h) < h.bound - 1e-12) {
        stats.value_unreachable = true;
        return stats;
      }
      const double moved = chaser.apply_covering(h);
      if (moved < eps / 4.0) {
        throw internal_error("linear covering fix moved less than the violation demands");
      }
      ++stats.linear;
      fired = true;
      break;
    }
    if (fired) continue;

    // Value side: exact minimizer or sampled witness.
    if (opt.v > 0.0) {
      std::optional<ElemMask> witness;
      if (opt.exact) {
        const WolseyResult wr = wolsey_exact(f, chaser.point(), avail, opt.exec);
        if (wr.value < (1.0 - eps) * opt.v) witness = wr.argmin;
      } else {
        if (rng == nullptr) throw internal_error("sampled separation needs a random stream");
        auto w = find_witness(f, chaser.point(), opt.v, eps, opt.trials, *rng, opt.exec);
        if (w) witness = w->set;
      }
      if (witness) {
        Halfspace h = truncated_value_row(f, *witness, avail, opt.v);
        if (h.coeffs.empty() || row_mass(h) < h.bound - 1e-12) {
          stats.value_unreachable = true;
          return stats;
        }
        const double moved = chaser.apply_covering(h);
        if (moved < eps / 4.0) {
          throw internal_error("value covering fix moved less than the violation demands");
        }
        ++stats.covering;
        continue;
      }
    }

    stats.converged = true;
    return stats;
  }
  return stats;
}

long default_t_cap(int n, double eps) {
  const double steps = std::ceil(std::log(std::max(2.0, n / eps)) / eps);
  return 50L * std::max(1, n) * static_cast<long>(steps);
}

int witness_trials(double witness_const, double eps, double budget_ratio) {
  const double t = witness_const / (eps * eps) * std::log(std::max(budget_ratio, 2.0));
  return static_cast<int>(std::ceil(t));
}

std::optional<FractionalPoint> approximate_or_separate(
    const SetFunction& f, const PartitionConstraint& c, double v,
    const AosParams& p, Rng& rng) {
  if (!(p.eps > 0.0 && p.eps < 1.0) || !(p.delta > 0.0 && p.delta < 1.0)) {
    throw input_error("approximate_or_separate: eps and delta must be in (0,1)");
  }
  const int n = f.ground_size();
  Chaser chaser(n, p.eps, std::max(1, n));
  if (v <= 0.0) return chaser.point();  // every point satisfies f* >= 0

  const long t_cap = p.t_cap > 0 ? p.t_cap : default_t_cap(n, p.eps);
  SeparationOptions opt;
  opt.eps = p.eps;
  opt.v = v;
  opt.exact = false;
  opt.trials = witness_trials(p.witness_const, p.eps, static_cast<double>(t_cap) / p.delta);
  opt.max_rounds = t_cap;
  opt.exec = p.exec;
  const SeparationStats stats = run_separation_loop(chaser, f, c, opt, &rng);
  if (!stats.converged) return std::nullopt;
  return scale_into_polytope(chaser.point(), p.eps);
}

namespace {

// Descending geometric grid values in [lo_anchor, n*lo_anchor], ascending order.
std::vector<double> geometric_grid(double anchor, int n, double eps) {
  std::vector<double> grid;
  if (!(anchor > 0.0)) return grid;
  const double hi = anchor * std::max(1, n);
  for (double v = hi; v > anchor * (1.0 - eps) * (1.0 + 1e-12); v *= (1.0 - eps)) {
    grid.push_back(v);
  }
  std::reverse(grid.begin(), grid.end());
  return grid;
}

}  // namespace

StaticResult maximize_static(const SetFunction& f, const PartitionConstraint& c,
                             double eps, double delta, Rng& rng,
                             const AosParams& base) {
  const int n = f.ground_size();
  const double vmax = f.max_singleton();
  if (vmax <= 0.0) return StaticResult{FractionalPoint(n, 0.0), 0.0};

  const std::vector<double> grid = geometric_grid(vmax, n, eps);
  const int probes = std::max(1, static_cast<int>(std::ceil(std::log2(grid.size() + 1))));
  AosParams p = base;
  p.eps = eps;
  p.delta = delta / probes;

  StaticResult best{FractionalPoint(n, 0.0), 0.0};
  int lo = 0, hi = static_cast<int>(grid.size()) - 1;
  while (lo <= hi) {
    const int mid = lo + (hi - lo) / 2;
    auto x = approximate_or_separate(f, c, grid[mid], p, rng);
    if (x) {
      best = StaticResult{std::move(*x), grid[mid]};
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  return best;
}

CurvatureResult maximize_with_curvature(const SetFunction& f,
                                        const PartitionConstraint& cons,
                                        double eps, double delta, Rng& rng,
                                        const AosParams& base) {
  const int n = f.ground_size();
  const CurvatureDecomposition dec = curvature_decompose(f);

  if (dec.c == 0.0) {
    // Additive: per-part top-capacity elements are exactly optimal.
    ElemMask s = 0;
    for (int j = 0; j < cons.part_count(); ++j) {
      std::vector<int> idx = set_to_indices(cons.parts()[j]);
      std::stable_sort(idx.begin(), idx.end(),
                       [&](int a, int b) { return dec.ell[a] > dec.ell[b]; });
      int taken = 0;
      for (int i : idx) {
        if (taken >= cons.caps()[j] || dec.ell[i] <= 0.0) break;
        s |= singleton(i);
        ++taken;
      }
    }
    FractionalPoint x(n, 0.0);
    for_each_element(s, [&](int i) { x[i] = 1.0; });
    double val = 0.0;
    for_each_element(s, [&](int i) { val += dec.ell[i]; });
    return CurvatureResult{s, val, std::move(x), 0.0};
  }

  // Sound upper bounds (value at S = empty of the coverage extension is
  // linear in x): targets above them have empty polytopes.
  auto linear_ub = [&](auto&& weight) {
    double total = 0.0;
    for (int j = 0; j < cons.part_count(); ++j) {
      std::vector<double> ws;
      for_each_element(cons.parts()[j], [&](int i) { ws.push_back(weight(i)); });
      std::sort(ws.begin(), ws.end(), std::greater<>());
      for (int t = 0; t < cons.caps()[j] && t < static_cast<int>(ws.size()); ++t) {
        total += std::max(0.0, ws[t]);
      }
    }
    return total;
  };
  const double gamma_ub = linear_ub([&](int i) { return dec.g.value(singleton(i)); });
  const double lambda_ub = linear_ub([&](int i) { return dec.ell[i]; });

  std::vector<double> gammas = geometric_grid(dec.g.max_singleton(), n, eps);
  std::vector<double> lambdas = geometric_grid(
      *std::max_element(dec.ell.begin(), dec.ell.end()), n, eps);
  gammas.insert(gammas.begin(), 0.0);
  lambdas.insert(lambdas.begin(), 0.0);

  struct Guess {
    double gamma, lambda, cert;
  };
  const double inv_scale = 1.0 / (1.0 + eps);
  auto cert_of = [&](double gamma, double lambda) {
    return inv_scale * (dec.c * (1.0 - std::exp(-1.0) - eps) * gamma +
                        (1.0 - dec.c) * (1.0 - eps) * lambda);
  };
  std::vector<Guess> guesses;
  for (double g : gammas) {
    if (g > gamma_ub * (1.0 + 1e-9)) continue;
    for (double l : lambdas) {
      if (l > lambda_ub * (1.0 + 1e-9)) continue;
      guesses.push_back(Guess{g, l, cert_of(g, l)});
    }
  }
  std::stable_sort(guesses.begin(), guesses.end(),
                   [](const Guess& a, const Guess& b) { return a.cert > b.cert; });

  const long t_cap = base.t_cap > 0 ? base.t_cap : default_t_cap(n, eps);
  const int trials =
      witness_trials(base.witness_const, eps, static_cast<double>(t_cap) / std::max(delta, 1e-6));

  for (const Guess& guess : guesses) {
    Chaser chaser(n, eps, std::max(1, n));
    SeparationOptions opt;
    opt.eps = eps;
    opt.v = guess.gamma;
    opt.trials = trials;
    opt.max_rounds = t_cap;
    opt.exec = base.exec;
    if (guess.lambda > 0.0) opt.linear_rows.emplace_back(dec.ell, guess.lambda);
    const SeparationStats stats = run_separation_loop(chaser, dec.g, cons, opt, &rng);
    if (!stats.converged) continue;
    FractionalPoint x = scale_into_polytope(chaser.point(), eps);
    const ElemMask s = pivotal_sample(x, cons, rng);
    return CurvatureResult{s, guess.cert, std::move(x), dec.c};
  }
  // The (0,0) guess always converges; unreachable.
  throw internal_error("maximize_with_curvature: no guess converged");
}

}  // namespace chase
