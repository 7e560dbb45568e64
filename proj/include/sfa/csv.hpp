#pragma once

#include <string>
#include <vector>

#include "sfa/matrix.hpp"

namespace sfa {

// Decimal text with 17 significant digits; round-trips any double.
std::string format_g17(double v);

// Time series file: header "t,value", t counted from 0.
void write_series_csv(const std::string& path, const std::vector<double>& values);
std::vector<double> read_series_csv(const std::string& path);

// Output components: header "t,y1,...,yk" plus an optional trailing
// "gamma_aligned" column.  t entries come from the embedding.
void write_components_csv(const std::string& path,
                          const std::vector<long long>& t, const Matrix& y,
                          const std::vector<double>* aligned = nullptr);

// Generic table with string cells (sweep results may hold error
// markers, so cells are preformatted by the caller).
void write_table_csv(const std::string& path,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows);

}  // namespace sfa
