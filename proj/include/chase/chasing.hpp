#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chase/aos.hpp"
#include "chase/constraints.hpp"
#include "chase/pbc_engine.hpp"
#include "chase/rng.hpp"
#include "chase/set_function.hpp"

namespace chase {

struct ChaseStep {
  ElemMask available = 0;
  SetFunction fn;
  double target = 0.0;
};

struct ChaseInstance {
  int n = 0;
  std::vector<std::string> labels;
  PartitionConstraint constraint;
  std::vector<ChaseStep> steps;

  int max_available() const;
  // Checks V_t <= OPT_t by brute force (throws infeasible_error); only
  // callable at enumeration scale.
  void validate(double tol = 1e-9) const;
};

struct TrajectoryStep {
  FractionalPoint x;        // output point, in the exact polytope
  double movement = 0.0;    // ||x^t - x^{t-1}||_1
  double certificate = 0.0; // F_t(1 - exp(-x^t)), exact or MC
  double cert_stderr = 0.0; // 0 for the exact path
  long covering_seps = 0;
  long packing_seps = 0;
};

struct Trajectory {
  std::vector<TrajectoryStep> steps;
  double ledger = 0.0;  // sum of per-step movements
  std::vector<StepLogEntry> engine_log;
};

struct ChaseOptions {
  double talg_mult = 8.0;
  double witness_const = 4.0;
  std::int64_t cert_mc_samples = 4096;
  Exec exec = Exec::kParallel;
};

// Deterministic chaser with exact coverage-extension separation (brute
// force per round); enumeration scale only.
Trajectory chase_slow(const ChaseInstance& inst, double eps,
                      const ChaseOptions& opt = {});

// Polynomial-time chaser with sampled witness separation.
Trajectory chase_fast(const ChaseInstance& inst, double eps, double delta,
                      Rng& rng, const ChaseOptions& opt = {});

}  // namespace chase
