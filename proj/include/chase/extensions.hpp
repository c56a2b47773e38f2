#pragma once

#include <cstdint>

#include "chase/common.hpp"
#include "chase/exec.hpp"
#include "chase/set_function.hpp"

namespace chase {

// Exact multilinear extension F(x), summing over subsets of support(x).
// Throws capacity_error when |support(x)| > 20; use multilinear_mc then.
double multilinear_exact(const SetFunction& f, const FractionalPoint& x);

struct McEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
};

// Unbiased sample-mean estimate of F(x) with independent inclusion;
// deterministic given the seed, for either execution policy.
McEstimate multilinear_mc(const SetFunction& f, const FractionalPoint& x,
                          std::int64_t samples, std::uint64_t seed,
                          Exec exec = Exec::kParallel);

struct WolseyResult {
  double value = 0.0;
  ElemMask argmin = 0;
};

// Exact coverage extension f*(x) = min_S f(S) + sum_i f(i|S) x_i, minimized
// over subsets of `available`. Lowest-mask minimizer on ties.
WolseyResult wolsey_exact(const SetFunction& f, const FractionalPoint& x,
                          ElemMask available, Exec exec = Exec::kParallel);
WolseyResult wolsey_exact(const SetFunction& f, const FractionalPoint& x,
                          Exec exec = Exec::kParallel);

// f(S) + sum_i f(i|S) x_i for one fixed S.
double wolsey_value_at(const SetFunction& f, ElemMask s, const FractionalPoint& x);

// Total curvature 1 - min_i f(i | E \ i)/f({i}); requires f({i}) > 0 for all i.
double curvature(const SetFunction& f);

struct CurvatureDecomposition {
  double c = 0.0;
  SetFunction g;          // non-negative monotone submodular, g <= f
  std::vector<double> ell;  // ell_i = f({i})
};

// Splits f = c*g + (1-c)*ell. When c = 0 the function is additive and g is a
// copy of f (the reconstruction holds since f = ell). Table-backed otherwise.
CurvatureDecomposition curvature_decompose(const SetFunction& f);

}  // namespace chase
