#pragma once

// Data-parallel double-precision kernels used by the numeric inner loops
// (regression Gram/coordinate updates, covariance estimation, z-scoring,
// Newton matvecs). Each kernel has a scalar reference implementation and,
// where the CPU supports it, a SIMD variant (AVX2+FMA on x86-64, NEON on
// aarch64) selected once at startup. The environment variable
// FACTORLAB_SIMD=scalar|avx2|neon overrides auto-detection.
//
// SIMD variants may reassociate floating-point sums, so reductions agree
// with the scalar reference only to rounding (see tests/test_kernels.cpp);
// within one process the selected backend is fixed, keeping runs
// deterministic.

#include <cstddef>
#include <span>
#include <string>

namespace factorlab::kernels {

enum class Backend { scalar, avx2, neon };

// Table of raw kernel entry points for one backend.
struct KernelTable {
    double (*dot)(const double*, const double*, std::size_t);
    double (*sum)(const double*, std::size_t);
    // sum of squared deviations from `center`
    double (*sumsq_dev)(const double*, std::size_t, double center);
    // y += alpha * x
    void (*axpy)(double alpha, const double*, double*, std::size_t);
    void (*scale)(double*, std::size_t, double alpha);
    // out[i] = clamp((x[i] - mean) * inv_std, lo, hi); NaN passes through
    void (*zscore_clip)(const double*, std::size_t, double mean,
                        double inv_std, double lo, double hi, double*);
};

const KernelTable& scalar_table();

// Active backend control. set_backend throws std::runtime_error if the
// requested backend is not available on this CPU.
Backend active_backend();
std::string backend_name(Backend b);
bool backend_supported(Backend b);
void set_backend(Backend b);

inline double dot(std::span<const double> a, std::span<const double> b);
inline double sum(std::span<const double> a);
inline double sumsq_dev(std::span<const double> a, double center);
inline void axpy(double alpha, std::span<const double> x, std::span<double> y);
inline void scale(std::span<double> x, double alpha);
inline void zscore_clip(std::span<const double> x, double mean, double inv_std,
                        double lo, double hi, std::span<double> out);

namespace detail {
const KernelTable& active_table();
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    return detail::active_table().dot(a.data(), b.data(), a.size());
}
inline double sum(std::span<const double> a) {
    return detail::active_table().sum(a.data(), a.size());
}
inline double sumsq_dev(std::span<const double> a, double center) {
    return detail::active_table().sumsq_dev(a.data(), a.size(), center);
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    detail::active_table().axpy(alpha, x.data(), y.data(), x.size());
}
inline void scale(std::span<double> x, double alpha) {
    detail::active_table().scale(x.data(), x.size(), alpha);
}
inline void zscore_clip(std::span<const double> x, double mean, double inv_std,
                        double lo, double hi, std::span<double> out) {
    detail::active_table().zscore_clip(x.data(), x.size(), mean, inv_std, lo,
                                       hi, out.data());
}

}  // namespace factorlab::kernels
