#include "chase/common.hpp"

#include <charconv>
#include <cstdio>

namespace chase {

std::vector<int> set_to_indices(ElemMask s) {
  std::vector<int> out;
  out.reserve(set_size(s));
  for_each_element(s, [&](int i) { out.push_back(i); });
  return out;
}

double l1_norm(const FractionalPoint& x) {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

double l1_distance(const FractionalPoint& a, const FractionalPoint& b) {
  if (a.size() != b.size()) throw input_error("l1_distance: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

ElemMask support(const FractionalPoint& x) {
  if (x.size() > kMaxGround) throw capacity_error("support: ground set too large");
  ElemMask m = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) m |= singleton(static_cast<int>(i));
  }
  return m;
}

FractionalPoint one_minus_exp_neg(const FractionalPoint& x) {
  FractionalPoint y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = -std::expm1(-x[i]);
  return y;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  }
  return std::string(buf, ptr);
}

}  // namespace chase
