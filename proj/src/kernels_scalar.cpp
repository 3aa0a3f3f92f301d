#include "kernels_detail.hpp"

namespace xjbp::detail {

namespace {

void update_left_run(double* l_s, const double* l_sp1, const double* r_s,
                     std::size_t top, std::size_t len, std::size_t o,
                     double alpha) {
  if (alpha == 1.0) {
    update_left_loop<false>(l_s, l_sp1, r_s, top, len, o, alpha);
  } else {
    update_left_loop<true>(l_s, l_sp1, r_s, top, len, o, alpha);
  }
}

void update_right_run(double* r_sp1, const double* r_s, const double* l_sp1,
                      std::size_t top, std::size_t len, std::size_t o,
                      double alpha) {
  if (alpha == 1.0) {
    update_right_loop<false>(r_sp1, r_s, l_sp1, top, len, o, alpha);
  } else {
    update_right_loop<true>(r_sp1, r_s, l_sp1, top, len, o, alpha);
  }
}

void saturating_sum(double* out, const double* a, const double* b,
                    std::size_t len) {
  saturating_sum_loop(out, a, b, len);
}

}  // namespace

extern const Kernels kScalarKernels = {
    "scalar",
    update_left_run,
    update_right_run,
    saturating_sum,
};

}  // namespace xjbp::detail
