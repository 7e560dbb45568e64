#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sfa/matrix.hpp"
#include "sfa/preprocessor.hpp"
#include "sfa/tolerances.hpp"

namespace sfa {

enum class Method { kGenEig, kSvdSfa };

std::string to_string(Method method);
Method method_from_string(const std::string& name);

// A trained model: the input stage, the expanded-signal mean, and the
// eigenpairs.  Row j of `weights` is the projection vector w'_j for
// output y_j(t) = w'_j . (v(t) - v0); eigenvalues are ascending, so
// row 0 is the slowest signal.
struct SfaModel {
    Preprocessor preprocessor;
    std::vector<double> v0;          // length M
    std::vector<double> eigenvalues; // ascending; [-1e-10, 0) reported as 0
    Matrix weights;                  // P x M
    Method method = Method::kSvdSfa;
    double epsilon = tol::kDefaultEpsilon;
    std::size_t rank_of_b = 0;       // eigenvalues of B above the cutoff
    std::size_t expanded_dim = 0;    // M
    // True when B was rank deficient at the cutoff or its Cholesky
    // factorization failed; outputs of such a model are suspect.
    bool unstable = false;

    std::size_t output_count() const { return weights.rows(); }
};

// Second-order statistics of the expanded training signal.
struct TrainingMoments {
    std::vector<double> v0;
    SymmetricMatrix b;        // covariance of v
    SymmetricMatrix c_prime;  // second moment of dv
    std::size_t count = 0;
    std::size_t derivative_count = 0;
};

// Preprocesses, expands, and accumulates each chunk; difference pairs
// never straddle chunk boundaries.
TrainingMoments accumulate_training(const std::vector<Matrix>& chunks,
                                    const Preprocessor& pre);

// Convenience: cuts one series (rows are samples) into consecutive
// chunks of `chunk_len` samples (0 means a single chunk).  A short
// final remnant of one sample is folded into the previous chunk.
TrainingMoments accumulate_training(const Matrix& series,
                                    const Preprocessor& pre,
                                    std::size_t chunk_len = 0);

// SVD-sphering route: whiten with the P x M transform from B (cutoff
// epsilon), eigensolve the sphered derivative moment, and map the
// eigenvectors back.  Robust when B is rank deficient.
SfaModel train_svd_sfa(const TrainingMoments& tm, const Preprocessor& pre,
                       double epsilon = tol::kDefaultEpsilon);

// Direct generalized eigenproblem C' w' = lambda B w'.  Reduces via
// Cholesky of B when possible; otherwise takes the uncapped whitening
// fallback, which deliberately reproduces the naive solver's fragile
// behavior on singular B, and flags the model unstable.
SfaModel train_gen_eig(const TrainingMoments& tm, const Preprocessor& pre,
                       double epsilon = tol::kDefaultEpsilon);

// Projects a series (rows are m-vectors) onto the first k outputs,
// slowest first.  k must satisfy 1 <= k <= output_count.
Matrix apply_model(const SfaModel& model, const Matrix& series, std::size_t k);
Matrix apply_model_serial(const SfaModel& model, const Matrix& series,
                          std::size_t k);

}  // namespace sfa
