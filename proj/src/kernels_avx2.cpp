// AVX2 variants of the tableau kernels. Compiled with -mavx2; only reached
// after the runtime CPU check in kernels.cpp.
//
// axpy/scale use mul+add (no FMA) so every element sees the same two
// roundings as the scalar path: results are bit-identical across backends.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

#include "modemflow/kernels.hpp"

namespace modemflow::kernels::detail {

void axpy_avx2(double* y, const double* x, double a, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d yv = _mm256_loadu_pd(y + i);
        __m256d xv = _mm256_loadu_pd(x + i);
        yv = _mm256_add_pd(yv, _mm256_mul_pd(av, xv));
        _mm256_storeu_pd(y + i, yv);
    }
    for (; i < n; ++i) {
        y[i] += a * x[i];
    }
}

void scale_avx2(double* x, double a, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), av));
    }
    for (; i < n; ++i) {
        x[i] *= a;
    }
}

std::size_t argmin_avx2(const double* x, std::size_t n) {
    if (n < 8) {
        return argmin_scalar(x, n);
    }
    // Per-lane running minima keep the earliest index within each residue
    // class; the final lexicographic (value, index) combine yields the
    // global first occurrence.
    __m256d vmin = _mm256_loadu_pd(x);
    __m256i vidx = _mm256_set_epi64x(3, 2, 1, 0);
    __m256i cur = vidx;
    const __m256i step = _mm256_set1_epi64x(4);
    std::size_t i = 4;
    for (; i + 4 <= n; i += 4) {
        cur = _mm256_add_epi64(cur, step);
        const __m256d v = _mm256_loadu_pd(x + i);
        const __m256d lt = _mm256_cmp_pd(v, vmin, _CMP_LT_OQ);
        vmin = _mm256_blendv_pd(vmin, v, lt);
        vidx = _mm256_castpd_si256(
            _mm256_blendv_pd(_mm256_castsi256_pd(vidx), _mm256_castsi256_pd(cur), lt));
    }
    alignas(32) double lane_min[4];
    alignas(32) std::int64_t lane_idx[4];
    _mm256_store_pd(lane_min, vmin);
    _mm256_store_si256(reinterpret_cast<__m256i*>(lane_idx), vidx);

    double best = lane_min[0];
    std::size_t best_idx = static_cast<std::size_t>(lane_idx[0]);
    for (int l = 1; l < 4; ++l) {
        const auto idx = static_cast<std::size_t>(lane_idx[l]);
        if (lane_min[l] < best || (lane_min[l] == best && idx < best_idx)) {
            best = lane_min[l];
            best_idx = idx;
        }
    }
    for (; i < n; ++i) {
        if (x[i] < best) {
            best = x[i];
            best_idx = i;
        }
    }
    return best_idx;
}

}  // namespace modemflow::kernels::detail

#endif  // x86_64
