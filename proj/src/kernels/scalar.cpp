#include "factorlab/kernels.hpp"

// Reference kernels. Straight sequential loops; these define the semantics
// the SIMD variants are tested against.

namespace factorlab::kernels {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sum_scalar(const double* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i];
    return acc;
}

double sumsq_dev_scalar(const double* a, std::size_t n, double center) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - center;
        acc += d * d;
    }
    return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_scalar(double* x, std::size_t n, double alpha) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void zscore_clip_scalar(const double* x, std::size_t n, double mean,
                        double inv_std, double lo, double hi, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        double z = (x[i] - mean) * inv_std;
        // comparisons are false for NaN, so missing values pass through
        if (z < lo) z = lo;
        if (z > hi) z = hi;
        out[i] = z;
    }
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{dot_scalar,  sum_scalar,   sumsq_dev_scalar,
                                   axpy_scalar, scale_scalar, zscore_clip_scalar};
    return table;
}

}  // namespace factorlab::kernels
