#pragma once

#include <string>

#include "sfa/model.hpp"

namespace sfa {

// Model document, schema "sfa-model/1": one JSON object with fields
// {version, method, epsilon, m, n, M, P, rank_of_b, mode, s0,
//  w0 (row-major), v0, eigenvalues, weights (row-major)}.
// Numbers carry 17 significant digits, so a round trip reproduces
// every double bit for bit.  The unstable diagnostic is not stored;
// loading derives it as rank_of_b < M for GEN_EIG models.
std::string serialize_model(const SfaModel& model);
SfaModel parse_model(const std::string& text);

void save_model(const SfaModel& model, const std::string& path);
SfaModel load_model(const std::string& path);

}  // namespace sfa
