#pragma once

#include <cstddef>
#include <vector>

#include "sfa/matrix.hpp"

namespace sfa {

struct EmbeddingSpec {
    std::size_t m = 1;    // embedding dimension
    std::size_t tau = 1;  // delay
};

struct Embedded {
    Matrix samples;                  // one m-vector per row, time ordered
    std::vector<long long> t_index;  // centering time index per row
};

// Sample offsets relative to the centering index, ascending.  Odd m
// centers exactly: (k - (m-1)/2) * tau.  Even m cannot center exactly
// and shifts by floor(tau/2): k*tau - tau*m/2 + floor(tau/2).
std::vector<long long> embedding_offsets(const EmbeddingSpec& spec);

// Time-delay embedding: row at centering index t holds the m samples
// w(t + offset) for each offset.  Output length is T - tau*(m-1).
Embedded embed(const std::vector<double>& series, const EmbeddingSpec& spec);

}  // namespace sfa
