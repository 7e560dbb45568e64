#include "sfa/moments.hpp"

#include <algorithm>
#include <stdexcept>

namespace sfa {
namespace {

inline std::size_t tri_size(std::size_t dim) { return dim * (dim + 1) / 2; }

// Accumulate the upper triangle of v v^T.  The inner run over j is
// contiguous both in v and in the packed triangle.
inline void add_outer(std::vector<double>& tri, const double* v, std::size_t dim) {
    std::size_t base = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double vi = v[i];
        for (std::size_t j = i; j < dim; ++j) tri[base + j - i] += vi * v[j];
        base += dim - i;
    }
}

}  // namespace

struct MomentAccumulator::Partial {
    std::vector<double> sum;
    std::vector<double> tri_vv;
    std::vector<double> tri_dd;
    std::size_t count = 0;
    std::size_t dcount = 0;

    explicit Partial(std::size_t dim)
        : sum(dim, 0.0), tri_vv(tri_size(dim), 0.0), tri_dd(tri_size(dim), 0.0) {}
};

MomentAccumulator::MomentAccumulator(std::size_t dim)
    : dim_(dim), sum_(dim, 0.0), tri_vv_(tri_size(dim), 0.0), tri_dd_(tri_size(dim), 0.0) {
    if (dim == 0) throw std::invalid_argument("MomentAccumulator: zero dimension");
}

void MomentAccumulator::fold(const Partial& p) {
    for (std::size_t i = 0; i < sum_.size(); ++i) sum_[i] += p.sum[i];
    for (std::size_t i = 0; i < tri_vv_.size(); ++i) tri_vv_[i] += p.tri_vv[i];
    for (std::size_t i = 0; i < tri_dd_.size(); ++i) tri_dd_[i] += p.tri_dd[i];
    count_ += p.count;
    dcount_ += p.dcount;
}

void MomentAccumulator::update(const Matrix& chunk) {
    if (chunk.cols() != dim_)
        throw std::invalid_argument("MomentAccumulator: dimension mismatch");
    const std::size_t n = chunk.rows();
    if (n < 2)
        throw std::invalid_argument("MomentAccumulator: chunk needs at least 2 samples");

    const std::size_t blocks = (n + kBlock - 1) / kBlock;
    // Bounded batch of live partials keeps memory flat while the
    // reduction order stays the fixed block order.
    const std::size_t batch = 16;
    for (std::size_t b0 = 0; b0 < blocks; b0 += batch) {
        const std::size_t nb = std::min(batch, blocks - b0);
        std::vector<Partial> parts(nb, Partial(dim_));
#pragma omp parallel for schedule(static)
        for (long long k = 0; k < static_cast<long long>(nb); ++k) {
            Partial& p = parts[static_cast<std::size_t>(k)];
            const std::size_t b = b0 + static_cast<std::size_t>(k);
            const std::size_t lo = b * kBlock;
            const std::size_t hi = std::min(lo + kBlock, n);
            std::vector<double> d(dim_);
            for (std::size_t t = lo; t < hi; ++t) {
                const double* v = chunk.row(t);
                for (std::size_t i = 0; i < dim_; ++i) p.sum[i] += v[i];
                add_outer(p.tri_vv, v, dim_);
                ++p.count;
            }
            // Difference pair t owns samples t and t+1; the last block
            // stops one short of the final sample.
            const std::size_t dhi = std::min(lo + kBlock, n - 1);
            for (std::size_t t = lo; t < dhi; ++t) {
                const double* a = chunk.row(t);
                const double* b2 = chunk.row(t + 1);
                for (std::size_t i = 0; i < dim_; ++i) d[i] = b2[i] - a[i];
                add_outer(p.tri_dd, d.data(), dim_);
                ++p.dcount;
            }
        }
        for (const Partial& p : parts) fold(p);
    }
}

void MomentAccumulator::update_serial(const Matrix& chunk) {
    if (chunk.cols() != dim_)
        throw std::invalid_argument("MomentAccumulator: dimension mismatch");
    const std::size_t n = chunk.rows();
    if (n < 2)
        throw std::invalid_argument("MomentAccumulator: chunk needs at least 2 samples");

    std::vector<double> d(dim_);
    for (std::size_t t = 0; t < n; ++t) {
        const double* v = chunk.row(t);
        for (std::size_t i = 0; i < dim_; ++i) sum_[i] += v[i];
        add_outer(tri_vv_, v, dim_);
        ++count_;
    }
    for (std::size_t t = 0; t + 1 < n; ++t) {
        const double* a = chunk.row(t);
        const double* b = chunk.row(t + 1);
        for (std::size_t i = 0; i < dim_; ++i) d[i] = b[i] - a[i];
        add_outer(tri_dd_, d.data(), dim_);
        ++dcount_;
    }
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
    if (other.dim_ != dim_)
        throw std::invalid_argument("MomentAccumulator: merge dimension mismatch");
    for (std::size_t i = 0; i < sum_.size(); ++i) sum_[i] += other.sum_[i];
    for (std::size_t i = 0; i < tri_vv_.size(); ++i) tri_vv_[i] += other.tri_vv_[i];
    for (std::size_t i = 0; i < tri_dd_.size(); ++i) tri_dd_[i] += other.tri_dd_[i];
    count_ += other.count_;
    dcount_ += other.dcount_;
}

MomentAccumulator::Finalized MomentAccumulator::finalize() const {
    if (count_ < 2 || dcount_ < 1)
        throw std::invalid_argument("MomentAccumulator: insufficient samples");

    Finalized out;
    out.count = count_;
    out.derivative_count = dcount_;
    out.mean.resize(dim_);
    const double inv_k = 1.0 / static_cast<double>(count_);
    for (std::size_t i = 0; i < dim_; ++i) out.mean[i] = sum_[i] * inv_k;

    out.b = SymmetricMatrix(dim_);
    out.c_prime = SymmetricMatrix(dim_);
    const double inv_kd = 1.0 / static_cast<double>(dcount_);
    std::size_t base = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i; j < dim_; ++j) {
            const double raw = tri_vv_[base + j - i] * inv_k;
            out.b.set(i, j, raw - out.mean[i] * out.mean[j]);
            out.c_prime.set(i, j, tri_dd_[base + j - i] * inv_kd);
        }
        base += dim_ - i;
    }
    return out;
}

}  // namespace sfa
