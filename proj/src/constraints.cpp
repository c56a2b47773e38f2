#include "chase/constraints.hpp"

#include <algorithm>

namespace chase {

PartitionConstraint::PartitionConstraint(int n, std::vector<ElemMask> parts,
                                         std::vector<int> caps)
    : n_(n), parts_(std::move(parts)), caps_(std::move(caps)) {
  if (n < 0 || n > kMaxGround) throw input_error("constraint: ground set size out of range");
  if (parts_.empty() || parts_.size() != caps_.size()) {
    throw input_error("constraint: parts and caps must align and be non-empty");
  }
  ElemMask seen = 0;
  for (std::size_t j = 0; j < parts_.size(); ++j) {
    if (parts_[j] == 0) throw input_error("constraint: empty part");
    if ((parts_[j] & seen) != 0) throw input_error("constraint: parts overlap");
    if ((parts_[j] & ~full_mask(n_)) != 0) throw input_error("constraint: part exceeds ground set");
    if (caps_[j] < 1) throw input_error("constraint: caps must be >= 1");
    seen |= parts_[j];
  }
  if (seen != full_mask(n_)) throw input_error("constraint: parts must cover the ground set");
}

PartitionConstraint PartitionConstraint::cardinality(int n, int k) {
  return PartitionConstraint(n, {full_mask(n)}, {k});
}

int PartitionConstraint::rank() const {
  int r = 0;
  for (std::size_t j = 0; j < parts_.size(); ++j) {
    r += std::min(caps_[j], set_size(parts_[j]));
  }
  return r;
}

bool PartitionConstraint::is_feasible_set(ElemMask s) const {
  if ((s & ~full_mask(n_)) != 0) throw input_error("is_feasible_set: element out of range");
  for (std::size_t j = 0; j < parts_.size(); ++j) {
    if (set_size(s & parts_[j]) > caps_[j]) return false;
  }
  return true;
}

double PartitionConstraint::part_sum(const FractionalPoint& x, int j) const {
  double s = 0.0;
  for_each_element(parts_[j], [&](int i) { s += x[i]; });
  return s;
}

std::optional<PartViolation> PartitionConstraint::fractional_violation(
    const FractionalPoint& x, double eps) const {
  if (eps <= 0.0) throw input_error("fractional_violation: eps must be positive");
  PartViolation best;
  for (int j = 0; j < part_count(); ++j) {
    const double excess = part_sum(x, j) - (1.0 + eps) * caps_[j];
    if (excess > 0.0 && (best.part < 0 || excess > best.excess)) {
      best.part = j;
      best.excess = excess;
    }
  }
  if (best.part < 0) return std::nullopt;
  return best;
}

FractionalPoint scale_into_polytope(FractionalPoint x, double eps) {
  for (double& v : x) v /= (1.0 + eps);
  return x;
}

}  // namespace chase
