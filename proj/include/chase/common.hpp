#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace chase {

// Element sets are bitmasks over a dense ground set. Ground sets are capped
// at 64 elements, which covers every exact routine in this library.
using ElemMask = std::uint64_t;

inline constexpr int kMaxGround = 64;

struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
// Instance is structurally too large for an exact routine.
struct capacity_error : std::length_error {
  using std::length_error::length_error;
};
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};
struct infeasible_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

inline int set_size(ElemMask s) { return std::popcount(s); }
inline bool set_contains(ElemMask s, int i) { return (s >> i) & ElemMask{1}; }
inline ElemMask singleton(int i) { return ElemMask{1} << i; }
inline ElemMask full_mask(int n) {
  return n >= 64 ? ~ElemMask{0} : (ElemMask{1} << n) - 1;
}

// Visits elements in ascending index order.
template <class F>
void for_each_element(ElemMask s, F&& f) {
  while (s) {
    f(std::countr_zero(s));
    s &= s - 1;
  }
}

// Visits all subsets of s in ascending numeric order, including 0 and s.
template <class F>
void for_each_subset(ElemMask s, F&& f) {
  ElemMask sub = 0;
  while (true) {
    f(sub);
    if (sub == s) break;
    sub = (sub - s) & s;
  }
}

std::vector<int> set_to_indices(ElemMask s);

// A point in [0,1]^n, indexed like the ground set.
using FractionalPoint = std::vector<double>;

double l1_norm(const FractionalPoint& x);
double l1_distance(const FractionalPoint& a, const FractionalPoint& b);
ElemMask support(const FractionalPoint& x);
// Coordinatewise 1 - exp(-x_i).
FractionalPoint one_minus_exp_neg(const FractionalPoint& x);

// Shortest-round-trip decimal rendering; used everywhere a double reaches
// an output file so reruns are byte-identical.
std::string format_double(double v);

}  // namespace chase
