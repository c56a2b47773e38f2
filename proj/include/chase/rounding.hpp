#pragma once

#include <memory>
#include <vector>

#include "chase/common.hpp"
#include "chase/constraints.hpp"
#include "chase/rng.hpp"

namespace chase {

// Online k=1 rounding by rejection sampling with corrections. A dummy
// coordinate absorbs 1 - ||x||_1, so inputs only need ||y||_1 <= 1.
// Marginals are exact: Pr[i in out] = y_i.
class KeyfitzRounder {
 public:
  explicit KeyfitzRounder(int n);
  ElemMask step(const FractionalPoint& y, Rng& rng);
  ElemMask current() const;

 private:
  int n_;
  int current_;                // element index, n_ means the dummy
  std::vector<double> last_;   // includes dummy coordinate, sums to 1
};

struct Interval {
  double lo = 0.0, hi = 0.0;  // half-open [lo, hi)
  double length() const { return hi - lo; }
};

// Online k=1 rounding with a single dart: per-element disjoint interval
// families inside [0,1), total measure x_i each; shrinking takes mass from
// the highest endpoints, growth fills the lowest free gaps.
class IntervalRounder {
 public:
  IntervalRounder(int n, Rng& rng);  // draws the dart once
  ElemMask step(const FractionalPoint& y);
  ElemMask current() const;
  double dart() const { return dart_; }
  const std::vector<std::vector<Interval>>& families() const { return fam_; }
  double family_measure(int i) const;

 private:
  int n_;
  double dart_;
  std::vector<std::vector<Interval>> fam_;
  std::vector<double> last_;
};

enum class UnitScheme { kInterval, kKeyfitz };

// Lift of a k=1 scheme to capacity k: k independent copies fed x/k, output
// is the union of the copies' outputs.
class KFoldRounder {
 public:
  KFoldRounder(int n, int k, UnitScheme scheme, Rng& rng);
  ElemMask step(const FractionalPoint& x, Rng& rng);
  ElemMask current() const;
  int capacity() const { return k_; }

 private:
  int n_;
  int k_;
  UnitScheme scheme_;
  std::vector<KeyfitzRounder> keyfitz_;
  std::vector<IntervalRounder> interval_;
};

// One k-fold rounder per part; the union respects the partition constraint,
// recourse stays below the fractional l1 movement in expectation, and the
// output vector is negatively associated.
class PartitionRounder {
 public:
  PartitionRounder(const PartitionConstraint& c, UnitScheme scheme, Rng& rng);
  ElemMask step(const FractionalPoint& x, Rng& rng);
  ElemMask current() const;

 private:
  PartitionConstraint cons_;
  std::vector<KFoldRounder> rounders_;
};

// Static dependent rounding with exact marginals: pairwise pivotal duels per
// part, then a Bernoulli for the leftover fractional mass.
ElemMask pivotal_sample(const FractionalPoint& x, const PartitionConstraint& c,
                        Rng& rng);

}  // namespace chase
