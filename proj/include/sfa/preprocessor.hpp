#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sfa/matrix.hpp"
#include "sfa/tolerances.hpp"

namespace sfa {

enum class PreprocessMode { kSphere, kNormalize, kNone };

std::string to_string(PreprocessMode mode);
PreprocessMode preprocess_mode_from_string(const std::string& name);

// Linear input stage x = W0 * (s - s0) fitted on training data.
// sphere: rows of w0 are scaled eigenvectors of Cov(s), so training
// outputs are mean-free with identity covariance; normalize: per
// component (s_i - mean_i) / std_i; none: mean subtraction only.
struct Preprocessor {
    Matrix w0;               // n x m
    std::vector<double> s0;  // m
    PreprocessMode mode = PreprocessMode::kSphere;

    std::size_t input_dim() const { return w0.cols(); }
    std::size_t output_dim() const { return w0.rows(); }

    std::vector<double> apply(const std::vector<double>& s) const;
    Matrix apply_rows(const Matrix& chunk) const;
};

// Fits the stage on `series` (rows are samples).  n is the output
// dimension; normalize and none require n = m.  In sphere mode the
// cutoff acts as a floor: eigenvalue k is scaled by
// 1/sqrt(max(lambda_k, eps * lambda_max)), so no direction is ever
// amplified past the floor and none is dropped; with n = m this keeps
// rank-deficient inputs usable, which the rank experiments need.
Preprocessor fit_preprocessor(const Matrix& series, PreprocessMode mode,
                              std::size_t n,
                              double epsilon = tol::kDefaultEpsilon);

}  // namespace sfa
