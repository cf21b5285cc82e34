#pragma once

// Small dense linear algebra used by the regression and portfolio solvers.
// Row-major storage; everything here targets systems of at most a few
// hundred rows, built on the SIMD kernels.

#include <cstddef>
#include <span>
#include <vector>

namespace factorlab::linalg {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }

    std::span<double> flat() { return data_; }
    std::span<const double> flat() const { return data_; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Result of an in-place Cholesky factorization attempt.
struct CholeskyResult {
    bool ok = false;
    Matrix lower;           // valid when ok
    std::size_t bad_pivot = 0;  // first non-positive pivot column when !ok
    double min_pivot = 0.0;     // smallest diagonal of L when ok
    double max_pivot = 0.0;
};

// A must be symmetric positive definite; returns lower-triangular L with
// A = L L^T. Fails (ok=false) on a non-positive pivot.
CholeskyResult cholesky(const Matrix& a);

// Solves L L^T x = b given the factor from cholesky().
std::vector<double> cholesky_solve(const Matrix& lower, std::span<const double> b);

// y = A x for row-major A.
std::vector<double> matvec(const Matrix& a, std::span<const double> x);

// x^T A y
double quad_form(const Matrix& a, std::span<const double> x, std::span<const double> y);

}  // namespace factorlab::linalg
