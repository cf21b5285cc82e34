#include "factorlab/linalg.hpp"

#include <cmath>

#include "factorlab/kernels.hpp"

namespace factorlab::linalg {

CholeskyResult cholesky(const Matrix& a) {
    const std::size_t n = a.rows();
    CholeskyResult res;
    res.lower = Matrix(n, n);
    Matrix& l = res.lower;
    double min_piv = 0.0, max_piv = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::span<const double> lrow_j = l.row(j);
        double d = a(j, j) - kernels::dot(lrow_j.subspan(0, j), lrow_j.subspan(0, j));
        if (!(d > 0.0) || !std::isfinite(d)) {
            res.ok = false;
            res.bad_pivot = j;
            return res;
        }
        const double piv = std::sqrt(d);
        l(j, j) = piv;
        if (j == 0) {
            min_piv = max_piv = piv;
        } else {
            if (piv < min_piv) min_piv = piv;
            if (piv > max_piv) max_piv = piv;
        }
        const double inv = 1.0 / piv;
        for (std::size_t i = j + 1; i < n; ++i) {
            const std::span<const double> lrow_i = l.row(i);
            const double v =
                a(i, j) - kernels::dot(lrow_i.subspan(0, j), lrow_j.subspan(0, j));
            l(i, j) = v * inv;
        }
    }
    res.ok = true;
    res.min_pivot = min_piv;
    res.max_pivot = max_piv;
    return res;
}

std::vector<double> cholesky_solve(const Matrix& lower, std::span<const double> b) {
    const std::size_t n = lower.rows();
    std::vector<double> x(b.begin(), b.end());
    // forward: L z = b
    for (std::size_t i = 0; i < n; ++i) {
        const std::span<const double> row = lower.row(i);
        const double s = kernels::dot(row.subspan(0, i), {x.data(), i});
        x[i] = (x[i] - s) / lower(i, i);
    }
    // backward: L^T x = z
    for (std::size_t ii = n; ii-- > 0;) {
        double s = 0.0;
        for (std::size_t k = ii + 1; k < n; ++k) s += lower(k, ii) * x[k];
        x[ii] = (x[ii] - s) / lower(ii, ii);
    }
    return x;
}

std::vector<double> matvec(const Matrix& a, std::span<const double> x) {
    std::vector<double> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) y[i] = kernels::dot(a.row(i), x);
    return y;
}

double quad_form(const Matrix& a, std::span<const double> x, std::span<const double> y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) acc += x[i] * kernels::dot(a.row(i), y);
    return acc;
}

}  // namespace factorlab::linalg
