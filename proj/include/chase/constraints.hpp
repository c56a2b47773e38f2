#pragma once

#include <optional>
#include <vector>

#include "chase/common.hpp"

namespace chase {

struct PartViolation {
  int part = -1;
  double excess = 0.0;
};

// Partition-matroid feasibility: disjoint parts covering the ground set with
// per-part capacities. A plain cardinality constraint is the one-part case.
class PartitionConstraint {
 public:
  PartitionConstraint(int n, std::vector<ElemMask> parts, std::vector<int> caps);
  static PartitionConstraint cardinality(int n, int k);

  int ground_size() const { return n_; }
  int part_count() const { return static_cast<int>(parts_.size()); }
  const std::vector<ElemMask>& parts() const { return parts_; }
  const std::vector<int>& caps() const { return caps_; }
  int rank() const;  // sum of caps clipped to part sizes

  bool is_feasible_set(ElemMask s) const;

  // Sum of x over one part.
  double part_sum(const FractionalPoint& x, int j) const;

  // Part maximizing sum_{i in P_j} x_i - (1+eps) k_j if positive, lowest
  // index on ties; nullopt when every part sum is within (1+eps) k_j.
  std::optional<PartViolation> fractional_violation(const FractionalPoint& x,
                                                    double eps) const;

 private:
  int n_ = 0;
  std::vector<ElemMask> parts_;
  std::vector<int> caps_;
};

// x / (1+eps); maps any (1+eps)-relaxed point into the exact polytope.
FractionalPoint scale_into_polytope(FractionalPoint x, double eps);

}  // namespace chase
