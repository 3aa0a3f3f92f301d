#pragma once

#include <cmath>
#include <cstddef>
#include <string_view>

namespace xjbp {

// Finite stand-in for certainty; message magnitudes clamp here.
inline constexpr double kSat = 1e30;

// Check-node update, min-sum form: sign(x)sign(y)min(|x|,|y|).
// Zero magnitudes keep the combined sign bit; numerically that is the
// sign(0)=+1 convention since +-0 compare equal.
inline double g_minsum(double x, double y) {
  double mag = std::min(std::fabs(x), std::fabs(y));
  return (std::signbit(x) != std::signbit(y)) ? -mag : mag;
}

// x + y clamped to [-kSat, kSat].
inline double sat_add(double x, double y) {
  return std::min(std::max(x + y, -kSat), kSat);
}

// alpha * g_minsum(x, y); alpha must lie in (0, 1].
double g_scaled(double x, double y, double alpha);

// Batch kernels over the message lattice. A run is `len` consecutive PE top
// indices starting at `top` with partner offset `o` (len <= o, so loads at
// i and i+o never overlap). Column pointers are length-n arrays for one
// lattice column. alpha == 1.0 selects the plain min-sum path; any other
// value scales every check-node output by alpha.
struct Kernels {
  const char* name;
  // l_s[i]   = G(l_sp1[i], sat(l_sp1[i+o] + r_s[i+o]))
  // l_s[i+o] = sat(G(r_s[i], l_sp1[i]) + l_sp1[i+o])
  void (*update_left_run)(double* l_s, const double* l_sp1, const double* r_s,
                          std::size_t top, std::size_t len, std::size_t o,
                          double alpha);
  // r_sp1[i]   = G(r_s[i], sat(l_sp1[i+o] + r_s[i+o]))
  // r_sp1[i+o] = sat(G(r_s[i], l_sp1[i]) + r_s[i+o])
  void (*update_right_run)(double* r_sp1, const double* r_s,
                           const double* l_sp1, std::size_t top,
                           std::size_t len, std::size_t o, double alpha);
  // out[i] = sat(a[i] + b[i])
  void (*saturating_sum)(double* out, const double* a, const double* b,
                         std::size_t len);
};

enum class Backend { kAuto, kScalar, kAvx2 };

bool avx2_available();
// Throws std::invalid_argument when the requested backend is unsupported.
const Kernels& select_kernels(Backend backend);
Backend parse_backend(std::string_view name);  // "auto" | "scalar" | "avx2"
const char* backend_name(Backend backend);

}  // namespace xjbp
