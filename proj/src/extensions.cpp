#include "chase/extensions.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "chase/rng.hpp"

namespace chase {

double multilinear_exact(const SetFunction& f, const FractionalPoint& x) {
  if (static_cast<int>(x.size()) != f.ground_size()) {
    throw input_error("multilinear_exact: dimension mismatch");
  }
  const ElemMask supp = support(x);
  if (set_size(supp) > 20) {
    throw capacity_error("multilinear_exact: support larger than 20; use multilinear_mc");
  }
  const std::vector<int> idx = set_to_indices(supp);
  double total = 0.0;
  for_each_subset(supp, [&](ElemMask s) {
    double p = 1.0;
    for (int i : idx) p *= set_contains(s, i) ? x[i] : 1.0 - x[i];
    if (p > 0.0) total += p * f.value(s);
  });
  return total;
}

McEstimate multilinear_mc(const SetFunction& f, const FractionalPoint& x,
                          std::int64_t samples, std::uint64_t seed, Exec exec) {
  if (static_cast<int>(x.size()) != f.ground_size()) {
    throw input_error("multilinear_mc: dimension mismatch");
  }
  if (samples < 1) throw input_error("multilinear_mc: samples must be >= 1");

  // Indices that actually need a coin; x_i in {0,1} are forced.
  std::vector<int> coin;
  ElemMask forced = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= 1.0) {
      forced |= singleton(static_cast<int>(i));
    } else if (x[i] > 0.0) {
      coin.push_back(static_cast<int>(i));
    }
  }

  const Rng base(seed);
  const std::int64_t chunks = (samples + par::kChunk - 1) / par::kChunk;
  std::vector<double> chunk_sum(chunks, 0.0), chunk_sq(chunks, 0.0);

  // Per-sample substreams and in-order per-chunk accumulation keep the
  // result identical for any thread count.
  const bool parallel = par::use_parallel(exec, samples);
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::int64_t lo = c * par::kChunk;
    const std::int64_t hi = std::min<std::int64_t>(samples, lo + par::kChunk);
    double sum = 0.0, sq = 0.0;
    for (std::int64_t j = lo; j < hi; ++j) {
      Rng r = base.substream(static_cast<std::uint64_t>(j));
      ElemMask s = forced;
      for (int i : coin) {
        if (r.uniform() < x[i]) s |= singleton(i);
      }
      const double v = f.value(s);
      sum += v;
      sq += v * v;
    }
    chunk_sum[c] = sum;
    chunk_sq[c] = sq;
  }

  double sum = 0.0, sq = 0.0;
  for (std::int64_t c = 0; c < chunks; ++c) {
    sum += chunk_sum[c];
    sq += chunk_sq[c];
  }
  const double mean = sum / static_cast<double>(samples);
  McEstimate out;
  out.estimate = mean;
  if (samples > 1) {
    double var = (sq - static_cast<double>(samples) * mean * mean) /
                 static_cast<double>(samples - 1);
    var = std::max(var, 0.0);
    out.stderr_ = std::sqrt(var / static_cast<double>(samples));
  }
  return out;
}

double wolsey_value_at(const SetFunction& f, ElemMask s, const FractionalPoint& x) {
  double total = f.value(s);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0 || set_contains(s, static_cast<int>(i))) continue;
    total += f.marginal(static_cast<int>(i), s) * x[i];
  }
  return total;
}

WolseyResult wolsey_exact(const SetFunction& f, const FractionalPoint& x,
                          ElemMask available, Exec exec) {
  if (static_cast<int>(x.size()) != f.ground_size()) {
    throw input_error("wolsey_exact: dimension mismatch");
  }
  const int m = set_size(available);
  if (m > 20) throw capacity_error("wolsey_exact: more than 20 available elements");
  const std::vector<int> idx = set_to_indices(available);
  const std::int64_t count = std::int64_t{1} << m;

  // Subsets are ranked by their compressed index; the scan visits masks in
  // ascending order inside each chunk and chunks merge in order, so the
  // lowest minimizing mask wins for either policy.
  const std::int64_t chunks = (count + par::kChunk - 1) / par::kChunk;
  std::vector<double> best_val(chunks);
  std::vector<ElemMask> best_set(chunks);

  const bool parallel = par::use_parallel(exec, count * std::max(1, m));
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::int64_t lo = c * par::kChunk;
    const std::int64_t hi = std::min<std::int64_t>(count, lo + par::kChunk);
    double bv = 0.0;
    ElemMask bs = 0;
    bool first = true;
    for (std::int64_t r = lo; r < hi; ++r) {
      ElemMask s = 0;
      for (int b = 0; b < m; ++b) {
        if ((r >> b) & 1) s |= singleton(idx[b]);
      }
      const double v = wolsey_value_at(f, s, x);
      if (first || v < bv) {
        bv = v;
        bs = s;
        first = false;
      }
    }
    best_val[c] = bv;
    best_set[c] = bs;
  }

  WolseyResult out{best_val[0], best_set[0]};
  for (std::int64_t c = 1; c < chunks; ++c) {
    if (best_val[c] < out.value) {
      out.value = best_val[c];
      out.argmin = best_set[c];
    }
  }
  return out;
}

WolseyResult wolsey_exact(const SetFunction& f, const FractionalPoint& x, Exec exec) {
  return wolsey_exact(f, x, full_mask(f.ground_size()), exec);
}

double curvature(const SetFunction& f) {
  const int n = f.ground_size();
  const ElemMask all = full_mask(n);
  double min_ratio = 1.0;
  for (int i = 0; i < n; ++i) {
    const double fi = f.value(singleton(i));
    if (fi <= 0.0) throw chase::domain_error("curvature: zero-valued element");
    min_ratio = std::min(min_ratio, f.marginal(i, all & ~singleton(i)) / fi);
  }
  const double c = std::clamp(1.0 - min_ratio, 0.0, 1.0);
  return c < 1e-12 ? 0.0 : c;  // cancellation noise means additive
}

CurvatureDecomposition curvature_decompose(const SetFunction& f) {
  const int n = f.ground_size();
  const double c = curvature(f);
  std::vector<double> ell(n);
  for (int i = 0; i < n; ++i) ell[i] = f.value(singleton(i));

  if (c == 0.0) {
    return CurvatureDecomposition{0.0, f, std::move(ell)};
  }
  if (n > 20) throw capacity_error("curvature_decompose: at most 20 elements");
  std::vector<double> table(std::size_t{1} << n);
  for_each_subset(full_mask(n), [&](ElemMask s) {
    double lin = 0.0;
    for_each_element(s, [&](int i) { lin += ell[i]; });
    table[s] = std::max(0.0, (f.value(s) - (1.0 - c) * lin) / c);
  });
  return CurvatureDecomposition{c, SetFunction::explicit_table(std::move(table)),
                                std::move(ell)};
}

}  // namespace chase
