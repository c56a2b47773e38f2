#include "chase/set_function.hpp"

#include <algorithm>
#include <utility>

namespace chase {

const char* fn_kind_name(FnKind k) {
  switch (k) {
    case FnKind::kCoverage: return "coverage";
    case FnKind::kWeightedCoverage: return "weighted-coverage";
    case FnKind::kCappedCardinality: return "capped-cardinality";
    case FnKind::kAdditive: return "additive";
    case FnKind::kExplicitTable: return "explicit-table";
  }
  return "?";
}

namespace {

void check_ground(int n) {
  if (n < 0 || n > kMaxGround) throw input_error("ground set size out of range");
}

}  // namespace

SetFunction SetFunction::coverage(int n, std::vector<std::vector<int>> items,
                                  std::vector<double> item_weights,
                                  std::vector<std::string> item_names) {
  check_ground(n);
  if (static_cast<int>(items.size()) != n) throw input_error("coverage: item list per element required");
  SetFunction f(n, FnKind::kCoverage);
  int universe = static_cast<int>(item_weights.size());
  for (const auto& lst : items) {
    for (int u : lst) {
      if (u < 0 || u >= universe) throw input_error("coverage: item id out of range");
    }
  }
  for (double w : item_weights) {
    if (w < 0.0) throw input_error("coverage: negative item weight");
  }
  f.items_ = std::move(items);
  f.item_weights_ = std::move(item_weights);
  f.item_names_ = std::move(item_names);
  return f;
}

SetFunction SetFunction::weighted_coverage(int n, std::vector<std::vector<int>> items,
                                           std::vector<double> item_weights,
                                           std::vector<std::string> item_names) {
  SetFunction f = coverage(n, std::move(items), std::move(item_weights), std::move(item_names));
  f.kind_ = FnKind::kWeightedCoverage;
  return f;
}

SetFunction SetFunction::capped_cardinality(int n, double cap) {
  check_ground(n);
  if (cap < 0.0) throw input_error("capped_cardinality: cap must be non-negative");
  SetFunction f(n, FnKind::kCappedCardinality);
  f.cap_ = cap;
  return f;
}

SetFunction SetFunction::additive(std::vector<double> weights) {
  check_ground(static_cast<int>(weights.size()));
  for (double w : weights) {
    if (w < 0.0) throw input_error("additive: negative weight");
  }
  SetFunction f(static_cast<int>(weights.size()), FnKind::kAdditive);
  f.weights_ = std::move(weights);
  return f;
}

SetFunction SetFunction::explicit_table(std::vector<double> values) {
  int n = 0;
  while ((std::size_t{1} << n) < values.size()) ++n;
  if ((std::size_t{1} << n) != values.size()) throw input_error("explicit_table: size must be a power of two");
  if (n > 20) throw capacity_error("explicit_table: at most 20 elements");
  SetFunction f(n, FnKind::kExplicitTable);
  f.table_ = std::move(values);
  return f;
}

SetFunction::SetFunction(const SetFunction& o)
    : n_(o.n_),
      kind_(o.kind_),
      cap_(o.cap_),
      weights_(o.weights_),
      items_(o.items_),
      item_weights_(o.item_weights_),
      item_names_(o.item_names_),
      table_(o.table_),
      evals_(o.evals_.load(std::memory_order_relaxed)) {}

SetFunction& SetFunction::operator=(const SetFunction& o) {
  if (this == &o) return *this;
  n_ = o.n_;
  kind_ = o.kind_;
  cap_ = o.cap_;
  weights_ = o.weights_;
  items_ = o.items_;
  item_weights_ = o.item_weights_;
  item_names_ = o.item_names_;
  table_ = o.table_;
  evals_.store(o.evals_.load(std::memory_order_relaxed), std::memory_order_relaxed);
  return *this;
}

SetFunction::SetFunction(SetFunction&& o) noexcept
    : n_(o.n_),
      kind_(o.kind_),
      cap_(o.cap_),
      weights_(std::move(o.weights_)),
      items_(std::move(o.items_)),
      item_weights_(std::move(o.item_weights_)),
      item_names_(std::move(o.item_names_)),
      table_(std::move(o.table_)),
      evals_(o.evals_.load(std::memory_order_relaxed)) {}

SetFunction& SetFunction::operator=(SetFunction&& o) noexcept {
  n_ = o.n_;
  kind_ = o.kind_;
  cap_ = o.cap_;
  weights_ = std::move(o.weights_);
  items_ = std::move(o.items_);
  item_weights_ = std::move(o.item_weights_);
  item_names_ = std::move(o.item_names_);
  table_ = std::move(o.table_);
  evals_.store(o.evals_.load(std::memory_order_relaxed), std::memory_order_relaxed);
  return *this;
}

void SetFunction::check_index_range(ElemMask s) const {
  if (n_ < 64 && (s >> n_) != 0) throw input_error("element index out of range");
}

double SetFunction::value(ElemMask s) const {
  check_index_range(s);
  evals_.fetch_add(1, std::memory_order_relaxed);
  switch (kind_) {
    case FnKind::kCoverage:
    case FnKind::kWeightedCoverage: {
      // Weight of the union of covered items.
      thread_local std::vector<std::uint32_t> mark;
      thread_local std::uint32_t stamp = 0;
      if (mark.size() < item_weights_.size()) mark.assign(item_weights_.size(), 0);
      if (++stamp == 0) {
        std::fill(mark.begin(), mark.end(), 0);
        stamp = 1;
      }
      double total = 0.0;
      for_each_element(s, [&](int i) {
        for (int u : items_[i]) {
          if (mark[u] != stamp) {
            mark[u] = stamp;
            total += item_weights_[u];
          }
        }
      });
      return total;
    }
    case FnKind::kCappedCardinality:
      return std::min<double>(static_cast<double>(set_size(s)), cap_);
    case FnKind::kAdditive: {
      double total = 0.0;
      for_each_element(s, [&](int i) { total += weights_[i]; });
      return total;
    }
    case FnKind::kExplicitTable:
      return table_[s];
  }
  return 0.0;
}

double SetFunction::marginal(int i, ElemMask s) const {
  if (i < 0 || i >= n_) throw input_error("marginal: element out of range");
  return value(s | singleton(i)) - value(s);
}

double SetFunction::max_singleton() const {
  double best = 0.0;
  for (int i = 0; i < n_; ++i) best = std::max(best, value(singleton(i)));
  return best;
}

void SetFunction::validate_oracle(double tol) const {
  if (n_ > 20) throw capacity_error("validate_oracle: at most 20 elements");
  if (std::abs(value(0)) > tol) throw chase::domain_error("oracle not normalized: f(empty) != 0");
  const ElemMask all = full_mask(n_);
  for_each_subset(all, [&](ElemMask s) {
    if (value(s) < -tol) throw chase::domain_error("oracle not non-negative");
  });
  // Monotone and submodular via pairwise marginal checks.
  for_each_subset(all, [&](ElemMask s) {
    for (int i = 0; i < n_; ++i) {
      if (set_contains(s, i)) continue;
      double mi = marginal(i, s);
      if (mi < -tol) throw chase::domain_error("oracle not monotone");
      for (int j = 0; j < n_; ++j) {
        if (j == i || set_contains(s, j)) continue;
        if (marginal(i, s | singleton(j)) > mi + tol) {
          throw chase::domain_error("oracle not submodular");
        }
      }
    }
  });
}

}  // namespace chase
