#pragma once

#include <cstddef>
#include <vector>

#include "sfa/jacobi.hpp"
#include "sfa/matrix.hpp"

namespace sfa {

// Compact whitening transform for a covariance matrix.  Rows of
// s_matrix are r_k^T / sqrt(lambda_k) for the kept eigenpairs, ordered
// by descending eigenvalue; directions whose eigenvalue ratio to the
// largest falls at or below epsilon carry no row at all, so the matrix
// is P x M rather than square.
struct SpheringTransform {
    Matrix s_matrix;                         // P x M
    std::vector<std::size_t> kept_indices;   // positions in `spectrum`
    std::vector<std::size_t> dropped_indices;
    std::vector<double> spectrum;            // all M eigenvalues, descending
    double epsilon = 0.0;
    std::vector<double> mean;                // subtracted before transforming

    std::size_t input_dim() const { return s_matrix.cols(); }
    std::size_t output_dim() const { return s_matrix.rows(); }

    // y = S * (x - mean)
    std::vector<double> apply(const std::vector<double>& x) const;
};

// Builds the transform from a covariance matrix and the mean of the
// data it came from.  Keeps eigenvalues with lambda/lambda_max > eps.
// Throws std::runtime_error("degenerate covariance") when nothing
// survives the cutoff (lambda_max <= 0; a positive largest eigenvalue
// always keeps itself).  epsilon outside (0,1) is invalid.
SpheringTransform sphering_transform(const SymmetricMatrix& b,
                                     const std::vector<double>& mean,
                                     double epsilon);

// Same, reusing an eigendecomposition of b already at hand.
SpheringTransform sphering_transform(const EigenDecomposition& eig,
                                     const std::vector<double>& mean,
                                     double epsilon);

// Convenience for tests and callers with centered data.
SpheringTransform sphering_transform(const SymmetricMatrix& b, double epsilon);

// Count of eigenvalues with lambda/lambda_max > eps.  Same error and
// validity conditions as sphering_transform.
std::size_t numerical_rank(const SymmetricMatrix& b, double epsilon);
std::size_t numerical_rank(const EigenDecomposition& eig, double epsilon);

}  // namespace sfa
