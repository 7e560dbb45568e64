#include "sfa/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace sfa {

bool Matrix::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

SymmetricMatrix::SymmetricMatrix(const Matrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("SymmetricMatrix: input must be square");
    const std::size_t n = a.rows();
    m_ = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const double v = 0.5 * (a(i, j) + a(j, i));
            m_(i, j) = v;
            m_(j, i) = v;
        }
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matmul: dimension mismatch");
    const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
    Matrix out(n, m, 0.0);
#pragma omp parallel for schedule(static)
    for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        double* oi = out.row(i);
        const double* ai = a.row(i);
        for (std::size_t p = 0; p < k; ++p) {
            const double aip = ai[p];
            const double* bp = b.row(p);
            for (std::size_t j = 0; j < m; ++j) oi[j] += aip * bp[j];
        }
    }
    return out;
}

SymmetricMatrix congruence(const Matrix& a, const SymmetricMatrix& b) {
    if (a.cols() != b.order())
        throw std::invalid_argument("congruence: dimension mismatch");
    Matrix ab = matmul(a, b.dense());
    Matrix full = matmul(ab, transpose(a));
    return SymmetricMatrix(full);
}

Matrix transpose(const Matrix& a) {
    Matrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    return out;
}

std::vector<double> matvec(const Matrix& a, const std::vector<double>& x) {
    if (a.cols() != x.size())
        throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* ai = a.row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) acc += ai[j] * x[j];
        y[i] = acc;
    }
    return y;
}

double quadratic_form(const SymmetricMatrix& s, const std::vector<double>& x) {
    if (s.order() != x.size())
        throw std::invalid_argument("quadratic_form: dimension mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double* si = s.dense().row(i);
        double rowacc = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) rowacc += si[j] * x[j];
        acc += x[i] * rowacc;
    }
    return acc;
}

}  // namespace sfa
