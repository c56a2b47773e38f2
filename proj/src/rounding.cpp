#include "chase/rounding.hpp"

#include <algorithm>
#include <cmath>

namespace chase {

namespace {

constexpr double kMassTol = 1e-9;

// y extended with the dummy coordinate; throws when ||y||_1 > 1 + tol.
std::vector<double> with_dummy(const FractionalPoint& y, int n) {
  if (static_cast<int>(y.size()) != n) throw input_error("rounder: dimension mismatch");
  double sum = 0.0;
  for (double v : y) {
    if (v < -kMassTol || v > 1.0 + kMassTol) throw input_error("rounder: coordinate outside [0,1]");
    sum += v;
  }
  if (sum > 1.0 + kMassTol) throw input_error("rounder: mass exceeds 1");
  std::vector<double> full(y.begin(), y.end());
  full.push_back(std::max(0.0, 1.0 - sum));
  return full;
}

}  // namespace

KeyfitzRounder::KeyfitzRounder(int n) : n_(n), current_(n), last_(n + 1, 0.0) {
  last_[n] = 1.0;  // all mass starts on the dummy
}

ElemMask KeyfitzRounder::current() const {
  return current_ < n_ ? singleton(current_) : ElemMask{0};
}

ElemMask KeyfitzRounder::step(const FractionalPoint& y, Rng& rng) {
  const std::vector<double> next = with_dummy(y, n_);
  const double xc = last_[current_];
  const double yc = next[current_];

  bool leave = false;
  if (xc > yc) {
    // Leave the current pick with probability (x_c - y_c)/x_c.
    leave = rng.uniform() * xc < (xc - yc);
  }
  if (leave) {
    double gain = 0.0;
    for (int j = 0; j <= n_; ++j) gain += std::max(0.0, next[j] - last_[j]);
    if (gain <= 0.0) {
      throw internal_error("keyfitz: no destination despite mass leaving");
    }
    double u = rng.uniform() * gain;
    int dest = current_;
    for (int j = 0; j <= n_; ++j) {
      const double inc = std::max(0.0, next[j] - last_[j]);
      if (inc <= 0.0) continue;
      if (u < inc) {
        dest = j;
        break;
      }
      u -= inc;
      dest = j;  // numeric tail lands on the last grower
    }
    current_ = dest;
  }
  last_ = next;
  return current();
}

IntervalRounder::IntervalRounder(int n, Rng& rng)
    : n_(n), dart_(rng.uniform()), fam_(n), last_(n, 0.0) {}

double IntervalRounder::family_measure(int i) const {
  double m = 0.0;
  for (const Interval& iv : fam_[i]) m += iv.length();
  return m;
}

ElemMask IntervalRounder::current() const {
  for (int i = 0; i < n_; ++i) {
    for (const Interval& iv : fam_[i]) {
      if (iv.lo <= dart_ && dart_ < iv.hi) return singleton(i);
    }
  }
  return 0;
}

ElemMask IntervalRounder::step(const FractionalPoint& y) {
  const std::vector<double> next = with_dummy(y, n_);  // validates mass

  // Shrink first so freed space is available to growers.
  for (int i = 0; i < n_; ++i) {
    double remove = last_[i] - y[i];
    if (remove <= 0.0) continue;
    while (remove > 0.0 && !fam_[i].empty()) {
      Interval& top = fam_[i].back();
      if (top.length() <= remove + 1e-15) {
        remove -= top.length();
        fam_[i].pop_back();
      } else {
        top.hi -= remove;
        remove = 0.0;
      }
    }
  }

  for (int i = 0; i < n_; ++i) {
    double add = y[i] - last_[i];
    if (add <= 0.0) continue;
    // Occupied intervals across all families, in order.
    std::vector<Interval> occ;
    for (const auto& fam : fam_) occ.insert(occ.end(), fam.begin(), fam.end());
    std::sort(occ.begin(), occ.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    double cursor = 0.0;
    std::size_t k = 0;
    while (add > kMassTol && cursor < 1.0) {
      while (k < occ.size() && occ[k].lo <= cursor + 1e-15) {
        cursor = std::max(cursor, occ[k].hi);
        ++k;
      }
      const double gap_hi = k < occ.size() ? occ[k].lo : 1.0;
      if (gap_hi <= cursor) continue;
      const double take = std::min(add, gap_hi - cursor);
      if (take > 0.0) {
        // Coalesce with an adjacent own interval when endpoints meet.
        if (!fam_[i].empty() && std::abs(fam_[i].back().hi - cursor) < 1e-15) {
          fam_[i].back().hi = cursor + take;
        } else {
          fam_[i].push_back(Interval{cursor, cursor + take});
        }
        std::sort(fam_[i].begin(), fam_[i].end(),
                  [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        add -= take;
      }
      cursor = gap_hi;
    }
    if (add > kMassTol) {
      throw internal_error("interval rounder: free space exhausted");
    }
  }

  last_.assign(y.begin(), y.end());
  return current();
}

KFoldRounder::KFoldRounder(int n, int k, UnitScheme scheme, Rng& rng)
    : n_(n), k_(k), scheme_(scheme) {
  if (k < 1) throw input_error("kfold: capacity must be >= 1");
  for (int c = 0; c < k; ++c) {
    if (scheme == UnitScheme::kInterval) {
      Rng sub = rng.substream(0x1000 + c);
      interval_.emplace_back(n, sub);
    } else {
      keyfitz_.emplace_back(n);
    }
  }
}

ElemMask KFoldRounder::current() const {
  ElemMask out = 0;
  for (const auto& r : keyfitz_) out |= r.current();
  for (const auto& r : interval_) out |= r.current();
  return out;
}

ElemMask KFoldRounder::step(const FractionalPoint& x, Rng& rng) {
  double sum = 0.0;
  for (double v : x) sum += v;
  if (sum > k_ + kMassTol) throw input_error("kfold: mass exceeds capacity");

  FractionalPoint scaled(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) scaled[i] = x[i] / k_;

  ElemMask out = 0;
  for (int c = 0; c < k_; ++c) {
    if (scheme_ == UnitScheme::kInterval) {
      out |= interval_[c].step(scaled);
    } else {
      out |= keyfitz_[c].step(scaled, rng);
    }
  }
  return out;
}

PartitionRounder::PartitionRounder(const PartitionConstraint& c, UnitScheme scheme,
                                   Rng& rng)
    : cons_(c) {
  for (int j = 0; j < c.part_count(); ++j) {
    Rng sub = rng.substream(0x2000 + j);
    rounders_.emplace_back(c.ground_size(), c.caps()[j], scheme, sub);
  }
}

ElemMask PartitionRounder::current() const {
  ElemMask out = 0;
  for (const auto& r : rounders_) out |= r.current();
  return out;
}

ElemMask PartitionRounder::step(const FractionalPoint& x, Rng& rng) {
  if (static_cast<int>(x.size()) != cons_.ground_size()) {
    throw input_error("partition rounder: dimension mismatch");
  }
  for (int j = 0; j < cons_.part_count(); ++j) {
    if (cons_.part_sum(x, j) > cons_.caps()[j] + kMassTol) {
      throw input_error("partition rounder: part mass exceeds its cap");
    }
  }
  ElemMask out = 0;
  for (int j = 0; j < cons_.part_count(); ++j) {
    FractionalPoint proj(x.size(), 0.0);
    for_each_element(cons_.parts()[j], [&](int i) { proj[i] = x[i]; });
    out |= rounders_[j].step(proj, rng);
  }
  return out;
}

ElemMask pivotal_sample(const FractionalPoint& x, const PartitionConstraint& c,
                        Rng& rng) {
  if (static_cast<int>(x.size()) != c.ground_size()) {
    throw input_error("pivotal_sample: dimension mismatch");
  }
  ElemMask out = 0;
  for (int j = 0; j < c.part_count(); ++j) {
    if (c.part_sum(x, j) > c.caps()[j] + kMassTol) {
      throw input_error("pivotal_sample: part mass exceeds its cap");
    }
    std::vector<int> idx = set_to_indices(c.parts()[j]);
    std::vector<double> p;
    p.reserve(idx.size());
    for (int i : idx) p.push_back(std::clamp(x[i], 0.0, 1.0));

    int cur = -1;
    auto settle = [&](int k) {
      if (p[k] >= 1.0 - kMassTol) out |= singleton(idx[k]);
    };
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (p[k] <= kMassTol) continue;
      if (p[k] >= 1.0 - kMassTol) {
        out |= singleton(idx[k]);
        continue;
      }
      if (cur < 0) {
        cur = static_cast<int>(k);
        continue;
      }
      // Duel: one of the pair becomes integral.
      const double a = std::min(1.0 - p[cur], p[k]);
      const double b = std::min(p[cur], 1.0 - p[k]);
      if (rng.uniform() * (a + b) < b) {
        p[cur] += a;
        p[k] -= a;
      } else {
        p[cur] -= b;
        p[k] += b;
      }
      if (p[cur] <= kMassTol || p[cur] >= 1.0 - kMassTol) {
        settle(cur);
        cur = (p[k] > kMassTol && p[k] < 1.0 - kMassTol) ? static_cast<int>(k) : -1;
        if (cur < 0) settle(static_cast<int>(k));
      } else {
        settle(static_cast<int>(k));
      }
    }
    if (cur >= 0 && rng.uniform() < p[cur]) out |= singleton(idx[cur]);
  }
  return out;
}

}  // namespace chase
