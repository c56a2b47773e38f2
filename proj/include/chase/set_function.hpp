#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "chase/common.hpp"

namespace chase {

enum class FnKind {
  kCoverage,
  kWeightedCoverage,
  kCappedCardinality,
  kAdditive,
  kExplicitTable,
};

const char* fn_kind_name(FnKind k);

// Value oracle for a non-negative monotone submodular function with an
// evaluation counter. marginal() counts as two oracle calls.
class SetFunction {
 public:
  static SetFunction coverage(int n, std::vector<std::vector<int>> items,
                              std::vector<double> item_weights,
                              std::vector<std::string> item_names = {});
  static SetFunction weighted_coverage(int n, std::vector<std::vector<int>> items,
                                       std::vector<double> item_weights,
                                       std::vector<std::string> item_names = {});
  static SetFunction capped_cardinality(int n, double cap);
  static SetFunction additive(std::vector<double> weights);
  // values indexed by bitmask; size must be a power of two, n <= 20.
  static SetFunction explicit_table(std::vector<double> values);

  SetFunction(const SetFunction& o);
  SetFunction& operator=(const SetFunction& o);
  SetFunction(SetFunction&& o) noexcept;
  SetFunction& operator=(SetFunction&& o) noexcept;

  int ground_size() const { return n_; }
  FnKind kind() const { return kind_; }

  double value(ElemMask s) const;
  double marginal(int i, ElemMask s) const;
  double max_singleton() const;

  std::uint64_t eval_count() const { return evals_.load(std::memory_order_relaxed); }
  void reset_eval_count() const { evals_.store(0, std::memory_order_relaxed); }

  // Brute-force check that the represented function is normalized,
  // non-negative, monotone and submodular. Throws domain_error otherwise.
  // Only valid at table scale; callers gate on ground_size().
  void validate_oracle(double tol = 1e-9) const;

  // Payload access for serialization and derived constructions.
  double cap() const { return cap_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<std::vector<int>>& item_lists() const { return items_; }
  const std::vector<double>& item_weights() const { return item_weights_; }
  const std::vector<std::string>& item_names() const { return item_names_; }
  const std::vector<double>& table() const { return table_; }

 private:
  SetFunction(int n, FnKind kind) : n_(n), kind_(kind) {}
  void check_index_range(ElemMask s) const;

  int n_ = 0;
  FnKind kind_ = FnKind::kAdditive;
  double cap_ = 0.0;
  std::vector<double> weights_;            // additive weights
  std::vector<std::vector<int>> items_;    // coverage: per-element item ids
  std::vector<double> item_weights_;       // coverage: per-item weight
  std::vector<std::string> item_names_;    // coverage: per-item label
  std::vector<double> table_;              // explicit table, 2^n values
  mutable std::atomic<std::uint64_t> evals_{0};
};

}  // namespace chase
