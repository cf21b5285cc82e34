#include "tables.hpp"

// AVX2 + FMA kernels, 4 doubles per lane group. This translation unit is
// compiled with -mavx2 -mfma; dispatch.cpp only hands out this table after
// a cpuid check, so no AVX2 instruction runs on unsupported hardware.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace factorlab::kernels {

namespace {

double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i),
                               _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                               _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i),
                               _mm256_loadu_pd(b + i), acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sum_avx2(const double* a, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(a + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(a + i + 4));
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(a + i));
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += a[i];
    return acc;
}

double sumsq_dev_avx2(const double* a, std::size_t n, double center) {
    const __m256d c = _mm256_set1_pd(center);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), c);
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double d = a[i] - center;
        s += d * d;
    }
    return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d av = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i),
                                          _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, r);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale_avx2(double* x, std::size_t n, double alpha) {
    const __m256d av = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(x + i, _mm256_mul_pd(av, _mm256_loadu_pd(x + i)));
    }
    for (; i < n; ++i) x[i] *= alpha;
}

void zscore_clip_avx2(const double* x, std::size_t n, double mean,
                      double inv_std, double lo, double hi, double* out) {
    const __m256d mv = _mm256_set1_pd(mean);
    const __m256d sv = _mm256_set1_pd(inv_std);
    const __m256d lov = _mm256_set1_pd(lo);
    const __m256d hiv = _mm256_set1_pd(hi);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d z = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(x + i), mv), sv);
        // min/max return the second operand when either input is NaN, so
        // keeping z in the second slot propagates missing values
        z = _mm256_max_pd(lov, z);
        z = _mm256_min_pd(hiv, z);
        _mm256_storeu_pd(out + i, z);
    }
    for (; i < n; ++i) {
        double z = (x[i] - mean) * inv_std;
        if (z < lo) z = lo;
        if (z > hi) z = hi;
        out[i] = z;
    }
}

}  // namespace

const KernelTable* avx2_table() {
    static const KernelTable table{dot_avx2,  sum_avx2,   sumsq_dev_avx2,
                                   axpy_avx2, scale_avx2, zscore_clip_avx2};
    return &table;
}

}  // namespace factorlab::kernels

#else

namespace factorlab::kernels {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace factorlab::kernels

#endif
