#include "tables.hpp"

// NEON kernels (aarch64 baseline, 2 doubles per vector).

#if defined(__aarch64__)

#include <arm_neon.h>

namespace factorlab::kernels {

namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    for (; i + 2 <= n; i += 2) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sum_neon(const double* a, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(a + i));
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += a[i];
    return s;
}

double sumsq_dev_neon(const double* a, std::size_t n, double center) {
    const float64x2_t c = vdupq_n_f64(center);
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t d = vsubq_f64(vld1q_f64(a + i), c);
        acc = vfmaq_f64(acc, d, d);
    }
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) {
        const double d = a[i] - center;
        s += d * d;
    }
    return s;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
    const float64x2_t av = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), av, vld1q_f64(x + i)));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale_neon(double* x, std::size_t n, double alpha) {
    const float64x2_t av = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(x + i, vmulq_f64(av, vld1q_f64(x + i)));
    }
    for (; i < n; ++i) x[i] *= alpha;
}

void zscore_clip_neon(const double* x, std::size_t n, double mean,
                      double inv_std, double lo, double hi, double* out) {
    std::size_t i = 0;
    for (; i < n; ++i) {
        // vmaxq/vminq NaN handling differs from the x86 convention, so the
        // clip stays scalar here; the transform itself is the cheap part
        double z = (x[i] - mean) * inv_std;
        if (z < lo) z = lo;
        if (z > hi) z = hi;
        out[i] = z;
    }
}

}  // namespace

const KernelTable* neon_table() {
    static const KernelTable table{dot_neon,  sum_neon,   sumsq_dev_neon,
                                   axpy_neon, scale_neon, zscore_clip_neon};
    return &table;
}

}  // namespace factorlab::kernels

#else

namespace factorlab::kernels {
const KernelTable* neon_table() { return nullptr; }
}  // namespace factorlab::kernels

#endif
