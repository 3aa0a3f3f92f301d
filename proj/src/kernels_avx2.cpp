// AVX2 variants of the lattice kernels. Every operation (abs, min, max, add,
// sign xor) rounds identically to the scalar reference, so results are
// bit-identical; the equivalence suite enforces that.

#include <immintrin.h>

#include "kernels_detail.hpp"

namespace xjbp::detail {

namespace {

inline __m256d vabs(__m256d x) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
}

inline __m256d vg(__m256d x, __m256d y) {
  __m256d sign = _mm256_and_pd(_mm256_xor_pd(x, y), _mm256_set1_pd(-0.0));
  return _mm256_or_pd(_mm256_min_pd(vabs(x), vabs(y)), sign);
}

inline __m256d vsat_add(__m256d x, __m256d y) {
  __m256d t = _mm256_add_pd(x, y);
  t = _mm256_max_pd(t, _mm256_set1_pd(-kSat));
  return _mm256_min_pd(t, _mm256_set1_pd(kSat));
}

template <bool Scaled>
void update_left_run(double* l_s, const double* l_sp1, const double* r_s,
                     std::size_t top, std::size_t len, std::size_t o,
                     double alpha) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = top;
  std::size_t end = top + len;
  for (; i + 4 <= end; i += 4) {
    __m256d a = _mm256_loadu_pd(l_sp1 + i);
    __m256d b = _mm256_loadu_pd(l_sp1 + i + o);
    __m256d ra = _mm256_loadu_pd(r_s + i);
    __m256d rb = _mm256_loadu_pd(r_s + i + o);
    __m256d g0 = vg(a, vsat_add(b, rb));
    __m256d g1 = vg(ra, a);
    if constexpr (Scaled) {
      g0 = _mm256_mul_pd(g0, va);
      g1 = _mm256_mul_pd(g1, va);
    }
    _mm256_storeu_pd(l_s + i, g0);
    _mm256_storeu_pd(l_s + i + o, vsat_add(g1, b));
  }
  update_left_loop<Scaled>(l_s, l_sp1, r_s, i, end - i, o, alpha);
}

template <bool Scaled>
void update_right_run(double* r_sp1, const double* r_s, const double* l_sp1,
                      std::size_t top, std::size_t len, std::size_t o,
                      double alpha) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = top;
  std::size_t end = top + len;
  for (; i + 4 <= end; i += 4) {
    __m256d ra = _mm256_loadu_pd(r_s + i);
    __m256d rb = _mm256_loadu_pd(r_s + i + o);
    __m256d a = _mm256_loadu_pd(l_sp1 + i);
    __m256d b = _mm256_loadu_pd(l_sp1 + i + o);
    __m256d g0 = vg(ra, vsat_add(b, rb));
    __m256d g1 = vg(ra, a);
    if constexpr (Scaled) {
      g0 = _mm256_mul_pd(g0, va);
      g1 = _mm256_mul_pd(g1, va);
    }
    _mm256_storeu_pd(r_sp1 + i, g0);
    _mm256_storeu_pd(r_sp1 + i + o, vsat_add(g1, rb));
  }
  update_right_loop<Scaled>(r_sp1, r_s, l_sp1, i, end - i, o, alpha);
}

void update_left_dispatch(double* l_s, const double* l_sp1, const double* r_s,
                          std::size_t top, std::size_t len, std::size_t o,
                          double alpha) {
  if (alpha == 1.0) {
    update_left_run<false>(l_s, l_sp1, r_s, top, len, o, alpha);
  } else {
    update_left_run<true>(l_s, l_sp1, r_s, top, len, o, alpha);
  }
}

void update_right_dispatch(double* r_sp1, const double* r_s,
                           const double* l_sp1, std::size_t top,
                           std::size_t len, std::size_t o, double alpha) {
  if (alpha == 1.0) {
    update_right_run<false>(r_sp1, r_s, l_sp1, top, len, o, alpha);
  } else {
    update_right_run<true>(r_sp1, r_s, l_sp1, top, len, o, alpha);
  }
}

void saturating_sum(double* out, const double* a, const double* b,
                    std::size_t len) {
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    _mm256_storeu_pd(out + i, vsat_add(_mm256_loadu_pd(a + i),
                                       _mm256_loadu_pd(b + i)));
  }
  saturating_sum_loop(out + i, a + i, b + i, len - i);
}

}  // namespace

extern const Kernels kAvx2Kernels = {
    "avx2",
    update_left_dispatch,
    update_right_dispatch,
    saturating_sum,
};

}  // namespace xjbp::detail
