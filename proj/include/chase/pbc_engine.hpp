#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "chase/common.hpp"

namespace chase {

enum class HalfspaceKind { kCovering, kPacking };

// Sparse non-negative halfspace <a,x> >= b (covering) or <= b (packing).
struct Halfspace {
  HalfspaceKind kind = HalfspaceKind::kCovering;
  std::vector<std::pair<int, double>> coeffs;  // strictly positive entries
  double bound = 0.0;
};

enum class StepKind { kCovering, kPacking, kDepart };

const char* step_kind_name(StepKind k);

struct StepLogEntry {
  int time = 0;
  StepKind kind = StepKind::kCovering;
  double movement = 0.0;
  double ledger = 0.0;  // cumulative after this entry
};

// Online positive-halfspace chasing state: maintains x in [0,1]^n, applies
// shifted-exponential covering updates and exponential packing updates with
// a binary-searched dual, and accounts all l1 movement.
class Chaser {
 public:
  // eps in (0,1); d is the sparsity bound used for the covering shifts.
  Chaser(int n, double eps, int d);

  const FractionalPoint& point() const { return x_; }
  double ledger() const { return ledger_; }
  double eps() const { return eps_; }
  int d() const { return d_; }
  const std::vector<StepLogEntry>& step_log() const { return log_; }
  void set_time(int t) { time_ = t; }

  // Raises each supported coordinate until <a,x> = bound (coordinates cap at
  // 1). Returns the l1 movement. Throws infeasible_error when even x = 1 on
  // the support cannot satisfy the bound.
  double apply_covering(const Halfspace& h);

  // Scales supported coordinates down until <a,x> = bound.
  double apply_packing(const Halfspace& h);

  // Zeroes departed coordinates; movement equals the mass removed.
  double zero_departed(ElemMask departed);

 private:
  double record(StepKind kind, double movement);
  void check_halfspace(const Halfspace& h) const;

  int n_;
  double eps_;
  int d_;
  FractionalPoint x_;
  double ledger_ = 0.0;
  int time_ = 0;
  std::vector<StepLogEntry> log_;
};

}  // namespace chase
