#pragma once

#include <vector>

#include "sfa/matrix.hpp"

namespace sfa {

// Result of a symmetric eigendecomposition.  Eigenvalues are sorted
// ascending; column j of `eigenvectors` belongs to eigenvalues[j].
// Columns are unit length and each is oriented so that its entry of
// largest magnitude (first such index on ties) is positive.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    Matrix eigenvectors;
};

// Full eigendecomposition of a symmetric matrix.  Uses the round-robin
// Jacobi kernel below, which is bitwise deterministic for any OpenMP
// thread count.  Throws std::invalid_argument for empty or non-finite
// input and std::runtime_error if the iteration fails to converge.
EigenDecomposition sym_eig(const SymmetricMatrix& a);

// Classic cyclic Jacobi, single threaded.  Kept as an independent
// reference implementation for tests and benchmarks.
EigenDecomposition jacobi_eigen_serial(const SymmetricMatrix& a);

// Round-robin Jacobi: each sweep is a sequence of rounds of pairwise
// disjoint rotations.  Within a round all angles are taken from the
// round-start matrix and applied as one column pass followed by one
// row pass, so the result does not depend on thread count.
EigenDecomposition jacobi_eigen_parallel(const SymmetricMatrix& a);

}  // namespace sfa
