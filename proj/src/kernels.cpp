#include "xjbp/kernels.hpp"

#include <stdexcept>
#include <string>

namespace xjbp {

namespace detail {
extern const Kernels kScalarKernels;
#if defined(XJBP_HAVE_AVX2)
extern const Kernels kAvx2Kernels;
#endif
}  // namespace detail

double g_scaled(double x, double y, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("scale factor must lie in (0, 1]");
  }
  return alpha * g_minsum(x, y);
}

bool avx2_available() {
#if defined(XJBP_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

const Kernels& select_kernels(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return detail::kScalarKernels;
    case Backend::kAvx2:
#if defined(XJBP_HAVE_AVX2)
      if (avx2_available()) return detail::kAvx2Kernels;
#endif
      throw std::invalid_argument("avx2 backend is not available on this host");
    case Backend::kAuto:
#if defined(XJBP_HAVE_AVX2)
      if (avx2_available()) return detail::kAvx2Kernels;
#endif
      return detail::kScalarKernels;
  }
  return detail::kScalarKernels;
}

Backend parse_backend(std::string_view name) {
  if (name == "auto") return Backend::kAuto;
  if (name == "scalar") return Backend::kScalar;
  if (name == "avx2") return Backend::kAvx2;
  throw std::invalid_argument("unknown kernel backend: " + std::string(name));
}

const char* backend_name(Backend backend) {
  switch (backend) {
    case Backend::kAuto:
      return "auto";
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
  }
  return "auto";
}

}  // namespace xjbp
