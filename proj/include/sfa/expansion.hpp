#pragma once

#include <cstddef>
#include <vector>

#include "sfa/matrix.hpp"

namespace sfa {

// Size of the degree-1-and-2 monomial basis over n inputs:
// n linear terms plus n(n+1)/2 products x_i*x_j with i <= j.
std::size_t expansion_dim(std::size_t n);

// Expands one sample: [x_1..x_n, x_1^2, x_1 x_2, ..., x_n^2] with the
// quadratic block in lexicographic (i, j) order, i <= j.
void expand(const double* x, std::size_t n, double* out);
std::vector<double> expand(const std::vector<double>& x);

// Row-wise expansion of a sample block.
Matrix expand_rows(const Matrix& x);

}  // namespace sfa
