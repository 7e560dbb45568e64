#include "sfa/expansion.hpp"

#include <stdexcept>

namespace sfa {

std::size_t expansion_dim(std::size_t n) {
    if (n == 0) throw std::invalid_argument("expansion_dim: n must be at least 1");
    return n + n * (n + 1) / 2;
}

void expand(const double* x, std::size_t n, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i];
    std::size_t pos = n;
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        for (std::size_t j = i; j < n; ++j) out[pos++] = xi * x[j];
    }
}

std::vector<double> expand(const std::vector<double>& x) {
    std::vector<double> out(expansion_dim(x.size()));
    expand(x.data(), x.size(), out.data());
    return out;
}

Matrix expand_rows(const Matrix& x) {
    const std::size_t n = x.cols();
    Matrix out(x.rows(), expansion_dim(n));
#pragma omp parallel for schedule(static)
    for (long long t = 0; t < static_cast<long long>(x.rows()); ++t) {
        const auto i = static_cast<std::size_t>(t);
        expand(x.row(i), n, out.row(i));
    }
    return out;
}

}  // namespace sfa
