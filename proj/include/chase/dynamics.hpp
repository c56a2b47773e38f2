#pragma once

#include <vector>

#include "chase/common.hpp"
#include "chase/rng.hpp"
#include "chase/set_function.hpp"

namespace chase {

struct DynStep {
  ElemMask solution = 0;
  double value = 0.0;
  double opt = 0.0;    // brute-force optimum over the current availability
  int recourse = 0;    // |S_t xor S_{t-1}|
  int anchors = 0;     // sliding window only
  bool recomputed = false;
};

struct DynResult {
  std::vector<DynStep> steps;
  long total_recourse = 0;
  long recomputes = 0;
  int max_anchors = 0;
  // Per-era counts of arrivals that were large on insertion (recourse
  // accounting report for the partially-dynamic chaser).
  std::vector<long> era_large_insertions;
};

// Insertion-only chaser: keeps an argmax over large items, recomputed only
// when the optimum grows by a 1/(1-eps) factor. Value stays within
// (1-eps)^2 of the optimum at every step.
DynResult incremental_chase(const std::vector<int>& arrivals, const SetFunction& f,
                            int k, double eps);

// Deletion-only twin: recomputes when the optimum shrinks by a (1-eps)
// factor. Departed solution elements are dropped immediately and a value
// safety check forces a recompute when the kept set falls behind.
DynResult decremental_chase(const std::vector<int>& removals, const SetFunction& f,
                            int k, double eps);

// Smooth-histogram chaser over the last `window` arrivals: geometrically
// spaced suffix anchors, each running the incremental rule; the earliest
// in-window anchor's solution is the output.
DynResult sliding_window_chase(const std::vector<int>& stream, int window,
                               const SetFunction& f, int k, double eps);

}  // namespace chase
