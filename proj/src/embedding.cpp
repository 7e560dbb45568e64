#include "sfa/embedding.hpp"

#include <stdexcept>
#include <string>

namespace sfa {

std::vector<long long> embedding_offsets(const EmbeddingSpec& spec) {
    if (spec.m < 1) throw std::invalid_argument("embedding: m must be >= 1");
    if (spec.tau < 1) throw std::invalid_argument("embedding: tau must be >= 1");
    const auto m = static_cast<long long>(spec.m);
    const auto tau = static_cast<long long>(spec.tau);
    std::vector<long long> offsets(spec.m);
    for (long long k = 0; k < m; ++k) {
        if (m % 2 == 1)
            offsets[static_cast<std::size_t>(k)] = (k - (m - 1) / 2) * tau;
        else
            offsets[static_cast<std::size_t>(k)] = k * tau - tau * m / 2 + tau / 2;
    }
    return offsets;
}

Embedded embed(const std::vector<double>& series, const EmbeddingSpec& spec) {
    const std::vector<long long> offsets = embedding_offsets(spec);
    const std::size_t min_len = spec.tau * (spec.m - 1) + 1;
    if (series.size() < min_len)
        throw std::invalid_argument("embedding: series too short, need at least " +
                                    std::to_string(min_len) + " samples");

    const long long first = -offsets.front();
    const long long last =
        static_cast<long long>(series.size()) - 1 - offsets.back();
    const auto rows = static_cast<std::size_t>(last - first + 1);

    Embedded out;
    out.samples = Matrix(rows, spec.m);
    out.t_index.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const long long t = first + static_cast<long long>(r);
        out.t_index[r] = t;
        double* row = out.samples.row(r);
        for (std::size_t k = 0; k < spec.m; ++k)
            row[k] = series[static_cast<std::size_t>(t + offsets[k])];
    }
    return out;
}

}  // namespace sfa
