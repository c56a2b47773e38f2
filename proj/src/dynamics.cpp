#include "chase/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "chase/constraints.hpp"
#include "chase/oracle_bench.hpp"

namespace chase {

namespace {

constexpr double kTol = 1e-12;

ElemMask large_items(const SetFunction& f, ElemMask avail, int k, double eps) {
  double vmax = 0.0;
  for_each_element(avail, [&](int i) { vmax = std::max(vmax, f.value(singleton(i))); });
  const double thr = eps / k * vmax;
  ElemMask large = 0;
  for_each_element(avail, [&](int i) {
    if (f.value(singleton(i)) >= thr * (1.0 - 1e-9)) large |= singleton(i);
  });
  return large;
}

OptResult cardinality_opt(const SetFunction& f, ElemMask avail, int k) {
  if (avail == 0) return OptResult{0.0, 0};
  return brute_opt(f, PartitionConstraint::cardinality(f.ground_size(), k), avail);
}

int era_length(int k, double eps) {
  const double phases = std::log(k * k / eps) / -std::log1p(-eps);
  return std::max(1, static_cast<int>(std::ceil(phases)) + 1);
}

DynResult partially_dynamic(const std::vector<int>& order, const SetFunction& f,
                            int k, double eps, bool insertion) {
  if (k < 1) throw input_error("chaser: k must be >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw input_error("chaser: eps must be in (0,1)");
  for (int e : order) {
    if (e < 0 || e >= f.ground_size()) throw input_error("chaser: element out of range");
  }

  ElemMask avail = 0;
  if (!insertion) {
    for (int e : order) avail |= singleton(e);
  }

  DynResult res;
  const int era_len = era_length(k, eps);
  ElemMask sol = 0;
  double ref_opt = 0.0;  // optimum at the last recompute

  for (int e : order) {
    bool recompute = false;
    const ElemMask prev = sol;
    if (insertion) {
      avail |= singleton(e);
    } else {
      avail &= ~singleton(e);
      if (set_contains(sol, e)) {
        sol &= ~singleton(e);  // forced drop, counted against prev below
      }
    }

    const OptResult opt = cardinality_opt(f, avail, k);
    if (insertion) {
      recompute = (ref_opt <= 0.0 && opt.value > 0.0) ||
                  opt.value * (1.0 - eps) >= ref_opt * (1.0 - kTol);
      if (recompute && opt.value <= 0.0) recompute = false;
      // Era report: count arrivals that are large on insertion.
      if (avail != 0 && (large_items(f, avail, k, eps) & singleton(e)) != 0) {
        const std::size_t era = res.recomputes / era_len;
        if (res.era_large_insertions.size() <= era) res.era_large_insertions.resize(era + 1, 0);
        ++res.era_large_insertions[era];
      }
    } else {
      recompute = opt.value <= ref_opt * (1.0 - eps) * (1.0 + kTol) ||
                  f.value(sol) < (1.0 - eps) * (1.0 - eps) * opt.value - kTol;
    }

    DynStep step;
    step.recomputed = recompute;
    if (recompute) {
      sol = avail == 0 ? 0 : cardinality_opt(f, large_items(f, avail, k, eps), k).set;
      ref_opt = opt.value;
      ++res.recomputes;
    }
    step.solution = sol;
    step.value = f.value(sol);
    step.opt = opt.value;
    step.recourse = set_size(prev ^ sol);
    res.total_recourse += step.recourse;
    res.steps.push_back(step);
  }
  return res;
}

}  // namespace

DynResult incremental_chase(const std::vector<int>& arrivals, const SetFunction& f,
                            int k, double eps) {
  return partially_dynamic(arrivals, f, k, eps, /*insertion=*/true);
}

DynResult decremental_chase(const std::vector<int>& removals, const SetFunction& f,
                            int k, double eps) {
  return partially_dynamic(removals, f, k, eps, /*insertion=*/false);
}

namespace {

struct Anchor {
  int start = 0;           // stream position of the suffix window
  double g = 0.0;          // OPT over [start, t]
  ElemMask solution = 0;   // incremental-rule solution for the suffix
  double ref_opt = 0.0;    // g at the anchor's last recompute
};

}  // namespace

DynResult sliding_window_chase(const std::vector<int>& stream, int window,
                               const SetFunction& f, int k, double eps) {
  if (window < 1) throw input_error("sliding_window: window must be >= 1");
  if (k < 1) throw input_error("sliding_window: k must be >= 1");
  if (window < k) throw input_error("sliding_window: window must be >= k");
  if (!(eps > 0.0 && eps < 1.0)) throw input_error("sliding_window: eps must be in (0,1)");

  const int t_len = static_cast<int>(stream.size());
  auto window_mask = [&](int from, int to) {  // inclusive positions
    ElemMask m = 0;
    for (int p = std::max(0, from); p <= to; ++p) m |= singleton(stream[p]);
    return m;
  };

  DynResult res;
  std::vector<Anchor> anchors;
  ElemMask out_prev = 0;

  for (int t = 0; t < t_len; ++t) {
    const int lo = std::max(0, t - window + 1);

    // Expire anchors that left the window.
    anchors.erase(std::remove_if(anchors.begin(), anchors.end(),
                                 [&](const Anchor& a) { return a.start < lo; }),
                  anchors.end());

    double win_vmax = 0.0;
    for (int p = lo; p <= t; ++p) {
      win_vmax = std::max(win_vmax, f.value(singleton(stream[p])));
    }

    // New suffix anchor for large arrivals; if the list went empty, re-seed
    // one at the window maximum instead (restart cost O(k)).
    const bool big_arrival = f.value(singleton(stream[t])) >= eps / k * win_vmax * (1.0 - 1e-9);
    if (big_arrival) {
      anchors.push_back(Anchor{t, 0.0, 0, 0.0});
    } else if (anchors.empty()) {
      int best_pos = lo;
      for (int p = lo; p <= t; ++p) {
        if (f.value(singleton(stream[p])) > f.value(singleton(stream[best_pos]))) best_pos = p;
      }
      anchors.push_back(Anchor{best_pos, 0.0, 0, 0.0});
    }

    // Refresh anchor values and run each suffix's incremental rule.
    for (Anchor& a : anchors) {
      const ElemMask m = window_mask(a.start, t);
      a.g = cardinality_opt(f, m, k).value;
      const bool trigger = (a.ref_opt <= 0.0 && a.g > 0.0) ||
                           a.g * (1.0 - eps) >= a.ref_opt * (1.0 - kTol);
      if (trigger && a.g > 0.0) {
        a.solution = cardinality_opt(f, large_items(f, m, k, eps), k).set;
        a.ref_opt = a.g;
        ++res.recomputes;
      }
    }

    // Delete middles that became redundant (to fixpoint, leftmost first).
    bool changed = true;
    while (changed && anchors.size() >= 3) {
      changed = false;
      for (std::size_t i = 1; i + 1 < anchors.size(); ++i) {
        if (anchors[i + 1].g >= (1.0 - eps) * anchors[i - 1].g - kTol) {
          anchors.erase(anchors.begin() + static_cast<long>(i));
          changed = true;
          break;
        }
      }
    }

    // Invariants: anchors ordered inside the window, no deletable middle.
    for (std::size_t i = 0; i + 1 < anchors.size(); ++i) {
      if (anchors[i].start >= anchors[i + 1].start) {
        throw internal_error("sliding_window: anchors out of order");
      }
    }
    if (anchors.front().start < lo || anchors.back().start > t) {
      throw internal_error("sliding_window: anchor outside the window");
    }
    for (std::size_t i = 1; i + 1 < anchors.size(); ++i) {
      if (anchors[i + 1].g >= (1.0 - eps) * anchors[i - 1].g + 1e-9) {
        throw internal_error("sliding_window: deletable middle anchor survived");
      }
    }

    DynStep step;
    step.solution = anchors.front().solution;
    step.value = f.value(step.solution);
    step.opt = cardinality_opt(f, window_mask(lo, t), k).value;
    step.anchors = static_cast<int>(anchors.size());
    step.recourse = set_size(step.solution ^ out_prev);
    step.recomputed = step.recourse > 0;
    res.max_anchors = std::max(res.max_anchors, step.anchors);
    res.total_recourse += step.recourse;
    out_prev = step.solution;
    res.steps.push_back(step);
  }
  return res;
}

}  // namespace chase
