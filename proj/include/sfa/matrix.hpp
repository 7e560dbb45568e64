#pragma once

#include <cstddef>
#include <vector>

namespace sfa {

// Dense row-major matrix of doubles. Deliberately minimal: the library needs
// products, transposes and symmetric storage, nothing more.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* row(std::size_t i) { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const { return data_.data() + i * cols_; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    bool all_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Square symmetric matrix. Symmetry is enforced on construction by
// (A + A^T)/2 so downstream code can rely on exact equality of mirrored
// entries.
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(std::size_t order) : m_(order, order, 0.0) {}
    explicit SymmetricMatrix(const Matrix& a);  // symmetrizes

    std::size_t order() const { return m_.rows(); }

    double& operator()(std::size_t i, std::size_t j) { return m_(i, j); }
    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    Matrix& dense() { return m_; }
    const Matrix& dense() const { return m_; }

    // Writes v to (i,j) and (j,i).
    void set(std::size_t i, std::size_t j, double v) { m_(i, j) = v; m_(j, i) = v; }

    bool all_finite() const { return m_.all_finite(); }

private:
    Matrix m_;
};

// out = a * b
Matrix matmul(const Matrix& a, const Matrix& b);
// out = a * b * a^T, symmetrized. b must be square with order == a.cols().
SymmetricMatrix congruence(const Matrix& a, const SymmetricMatrix& b);
Matrix transpose(const Matrix& a);

// y = a * x
std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);
// x^T * s * x
double quadratic_form(const SymmetricMatrix& s, const std::vector<double>& x);

}  // namespace sfa
