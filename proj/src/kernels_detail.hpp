#pragma once

#include <cstddef>

#include "xjbp/kernels.hpp"

// Scalar run loops, shared between the scalar backend and the vector
// backends' tails. The Scaled flag is resolved at compile time so the
// min-sum path carries no multiply.

namespace xjbp::detail {

template <bool Scaled>
inline double g_apply(double x, double y, double alpha) {
  double g = g_minsum(x, y);
  if constexpr (Scaled) g *= alpha;
  return g;
}

template <bool Scaled>
void update_left_loop(double* l_s, const double* l_sp1, const double* r_s,
                      std::size_t top, std::size_t len, std::size_t o,
                      double alpha) {
  for (std::size_t i = top; i < top + len; ++i) {
    double a = l_sp1[i];
    double b = l_sp1[i + o];
    l_s[i] = g_apply<Scaled>(a, sat_add(b, r_s[i + o]), alpha);
    l_s[i + o] = sat_add(g_apply<Scaled>(r_s[i], a, alpha), b);
  }
}

template <bool Scaled>
void update_right_loop(double* r_sp1, const double* r_s, const double* l_sp1,
                       std::size_t top, std::size_t len, std::size_t o,
                       double alpha) {
  for (std::size_t i = top; i < top + len; ++i) {
    double ra = r_s[i];
    r_sp1[i] = g_apply<Scaled>(ra, sat_add(l_sp1[i + o], r_s[i + o]), alpha);
    r_sp1[i + o] = sat_add(g_apply<Scaled>(ra, l_sp1[i], alpha), r_s[i + o]);
  }
}

inline void saturating_sum_loop(double* out, const double* a, const double* b,
                                std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) out[i] = sat_add(a[i], b[i]);
}

}  // namespace xjbp::detail
