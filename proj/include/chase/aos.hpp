#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "chase/constraints.hpp"
#include "chase/exec.hpp"
#include "chase/extensions.hpp"
#include "chase/pbc_engine.hpp"
#include "chase/rng.hpp"
#include "chase/set_function.hpp"

namespace chase {

struct WitnessSample {
  double t = 0.0;
  ElemMask set = 0;
  double wolsey_value = 0.0;
};

// Exponential-clock threshold set: draws t ~ Uni[0,1] and Y_i ~ Exp(x_i)
// (infinite when x_i = 0) and returns S = {i : Y_i <= t}. wolsey_value is
// left NaN; fill it with wolsey_value_at.
WitnessSample sample_threshold_set(const FractionalPoint& x, Rng& rng);

// Runs up to `trials` independent threshold-set draws and returns the first
// (lowest stream index) S with f(S) + sum_i f(i|S) x_i <= (1 - eps/2) v.
std::optional<WitnessSample> find_witness(const SetFunction& f,
                                          const FractionalPoint& x, double v,
                                          double eps, int trials, Rng& rng,
                                          Exec exec = Exec::kParallel);

// Truncated covering row for the value constraint: coefficients
// min{v - f(S), f(i|S)} / (v - f(S)) over the available support, unit bound.
// Every integral feasible set of value >= v satisfies it.
Halfspace truncated_value_row(const SetFunction& f, ElemMask witness,
                              ElemMask available, double v);

struct SeparationOptions {
  double eps = 0.1;
  double v = 0.0;           // value target; <= 0 disables value separation
  bool exact = false;       // brute-force Wolsey separation instead of sampling
  int trials = 0;           // witness draws per round when sampling
  long max_rounds = 1000;
  ElemMask available = 0;
  Exec exec = Exec::kParallel;
  // Additional exactly-checked linear covering constraints <w,x> >= bound,
  // separated in truncated normalized form when violated by more than eps.
  std::vector<std::pair<std::vector<double>, double>> linear_rows;
};

struct SeparationStats {
  long covering = 0;
  long packing = 0;
  long linear = 0;
  bool converged = false;
  // A truncated covering row was unsatisfiable even at x = 1: no integral
  // feasible set reaches the target, so the caller may declare it empty.
  bool value_unreachable = false;
};

// Cutting-plane fixpoint on one polytope revelation: alternates packing
// fixes for violated parts with covering fixes for the value rows until
// neither fires. The chaser's point stays (1+eps)-relaxed feasible.
SeparationStats run_separation_loop(Chaser& chaser, const SetFunction& f,
                                    const PartitionConstraint& c,
                                    const SeparationOptions& opt, Rng* rng);

struct AosParams {
  double eps = 0.1;
  double delta = 0.1;
  long t_cap = 0;  // 0 = default_t_cap(n, eps)
  double witness_const = 4.0;
  Exec exec = Exec::kParallel;
};

long default_t_cap(int n, double eps);
int witness_trials(double witness_const, double eps, double budget_ratio);

// Cutting-plane search for a point of the polytope P(c) with f*(x) >= v.
// Returns a point of the exact polytope (after 1/(1+eps) scaling), or
// nullopt when the target is declared unreachable.
std::optional<FractionalPoint> approximate_or_separate(
    const SetFunction& f, const PartitionConstraint& c, double v,
    const AosParams& p, Rng& rng);

struct StaticResult {
  FractionalPoint x;
  double value_lb = 0.0;
};

// Geometric value grid plus binary search over approximate_or_separate.
StaticResult maximize_static(const SetFunction& f, const PartitionConstraint& c,
                             double eps, double delta, Rng& rng,
                             const AosParams& base = {});

struct CurvatureResult {
  ElemMask set = 0;
  double expected_value_cert = 0.0;
  FractionalPoint x;  // the fractional candidate the set was rounded from
  double c = 0.0;     // measured total curvature
};

// Curvature-sensitive solver: decomposes f = c g + (1-c) ell, guesses
// (gamma, lambda) targets on geometric grids, solves each with the value
// loop plus one linear covering row, and rounds the best survivor.
CurvatureResult maximize_with_curvature(const SetFunction& f,
                                        const PartitionConstraint& c,
                                        double eps, double delta, Rng& rng,
                                        const AosParams& base = {});

}  // namespace chase
