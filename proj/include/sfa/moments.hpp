#pragma once

#include <cstddef>
#include <vector>

#include "sfa/matrix.hpp"

namespace sfa {

// Streaming second-order statistics over chunked data.  Feeding a
// chunk updates raw sums for the mean and covariance of the samples
// and for the second moment of their first differences; differences
// are taken inside a chunk only, never across a chunk boundary.
//
// update() runs a blocked kernel: samples are cut into fixed blocks,
// per-block partial sums are computed (in parallel when OpenMP is on)
// and reduced in block order, so results do not depend on the thread
// count.  update_serial() is a plain single-pass reference kept for
// tests and benchmarks; it maintains the same state.
class MomentAccumulator {
public:
    static constexpr std::size_t kBlock = 512;

    explicit MomentAccumulator(std::size_t dim);

    // Chunk rows are consecutive samples.  Throws std::invalid_argument
    // on dimension mismatch or a chunk of fewer than two samples.
    void update(const Matrix& chunk);
    void update_serial(const Matrix& chunk);

    // Sums two accumulators; associative and commutative.
    void merge(const MomentAccumulator& other);

    struct Finalized {
        std::vector<double> mean;    // v0
        SymmetricMatrix b;           // <v v^T> - v0 v0^T, population normalization
        SymmetricMatrix c_prime;     // <dv dv^T>, not mean-removed
        std::size_t count = 0;       // samples behind `b`
        std::size_t derivative_count = 0;
    };

    // Throws std::invalid_argument until at least two samples and one
    // difference pair have been seen.
    Finalized finalize() const;

    std::size_t dim() const { return dim_; }
    std::size_t count() const { return count_; }
    std::size_t derivative_count() const { return dcount_; }

private:
    struct Partial;
    void fold(const Partial& p);

    std::size_t dim_;
    std::size_t count_ = 0;
    std::size_t dcount_ = 0;
    std::vector<double> sum_;      // sum of samples
    std::vector<double> tri_vv_;   // upper triangle of sum v v^T
    std::vector<double> tri_dd_;   // upper triangle of sum dv dv^T
};

}  // namespace sfa
