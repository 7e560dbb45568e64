#include "sfa/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace sfa {
namespace {

void write_all(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    out.close();
    if (!out) throw std::runtime_error("write failed: " + path);
}

// Strtod with full-token validation (C locale is never changed here).
double parse_double(const std::string& token, const std::string& path,
                    std::size_t line) {
    const char* begin = token.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw std::runtime_error(path + ":" + std::to_string(line) +
                                 ": not a number: '" + token + "'");
    return v;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

}  // namespace

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_series_csv(const std::string& path, const std::vector<double>& values) {
    std::string out = "t,value\n";
    for (std::size_t t = 0; t < values.size(); ++t) {
        out += std::to_string(t);
        out += ',';
        out += format_g17(values[t]);
        out += '\n';
    }
    write_all(path, out);
}

std::vector<double> read_series_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != "t,value")
        throw std::runtime_error(path + ": expected header 't,value'");
    std::vector<double> values;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected 't,value' row");
        values.push_back(parse_double(line.substr(comma + 1), path, lineno));
    }
    if (values.empty()) throw std::runtime_error(path + ": no samples");
    return values;
}

void write_components_csv(const std::string& path,
                          const std::vector<long long>& t, const Matrix& y,
                          const std::vector<double>* aligned) {
    if (t.size() != y.rows())
        throw std::invalid_argument("write_components_csv: row count mismatch");
    if (aligned && aligned->size() != y.rows())
        throw std::invalid_argument("write_components_csv: aligned length mismatch");

    std::string out = "t";
    for (std::size_t j = 0; j < y.cols(); ++j)
        out += ",y" + std::to_string(j + 1);
    if (aligned) out += ",gamma_aligned";
    out += '\n';
    for (std::size_t r = 0; r < y.rows(); ++r) {
        out += std::to_string(t[r]);
        for (std::size_t j = 0; j < y.cols(); ++j) {
            out += ',';
            out += format_g17(y(r, j));
        }
        if (aligned) {
            out += ',';
            out += format_g17((*aligned)[r]);
        }
        out += '\n';
    }
    write_all(path, out);
}

void write_table_csv(const std::string& path,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw std::invalid_argument("write_table_csv: ragged row");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    write_all(path, out);
}

}  // namespace sfa
