#include "sfa/model_io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "sfa/csv.hpp"
#include "sfa/expansion.hpp"

namespace sfa {
namespace {

constexpr const char* kVersion = "sfa-model/1";

void append_array(std::string& out, const char* name, const double* v,
                  std::size_t len, bool last = false) {
    out += "  \"";
    out += name;
    out += "\": [";
    for (std::size_t i = 0; i < len; ++i) {
        if (i) out += ',';
        if (!std::isfinite(v[i]))
            throw std::runtime_error("model contains non-finite values");
        out += format_g17(v[i]);
    }
    out += last ? "]\n" : "],\n";
}

using nlohmann::json;

const json& field(const json& doc, const char* name) {
    const auto it = doc.find(name);
    if (it == doc.end())
        throw std::runtime_error(std::string("model document: missing field '") +
                                 name + "'");
    return *it;
}

std::size_t get_count(const json& doc, const char* name) {
    const json& f = field(doc, name);
    if (!f.is_number_unsigned())
        throw std::runtime_error(std::string("model document: field '") + name +
                                 "' must be a non-negative integer");
    return f.get<std::size_t>();
}

std::vector<double> get_numbers(const json& doc, const char* name,
                                std::size_t expect) {
    const json& f = field(doc, name);
    if (!f.is_array() || f.size() != expect)
        throw std::runtime_error(std::string("model document: field '") + name +
                                 "' must be an array of " +
                                 std::to_string(expect) + " numbers");
    std::vector<double> out(expect);
    for (std::size_t i = 0; i < expect; ++i) {
        if (!f[i].is_number())
            throw std::runtime_error(std::string("model document: field '") +
                                     name + "' holds a non-number");
        out[i] = f[i].get<double>();
        if (!std::isfinite(out[i]))
            throw std::runtime_error(std::string("model document: field '") +
                                     name + "' holds a non-finite value");
    }
    return out;
}

Matrix to_matrix(const std::vector<double>& flat, std::size_t rows,
                 std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < flat.size(); ++i) m.data()[i] = flat[i];
    return m;
}

}  // namespace

std::string serialize_model(const SfaModel& model) {
    const std::size_t m = model.preprocessor.input_dim();
    const std::size_t n = model.preprocessor.output_dim();
    const std::size_t big = model.expanded_dim;
    const std::size_t p = model.output_count();

    std::string out = "{\n";
    out += "  \"version\": \"";
    out += kVersion;
    out += "\",\n";
    out += "  \"method\": \"" + to_string(model.method) + "\",\n";
    if (!std::isfinite(model.epsilon))
        throw std::runtime_error("model contains non-finite values");
    out += "  \"epsilon\": " + format_g17(model.epsilon) + ",\n";
    out += "  \"m\": " + std::to_string(m) + ",\n";
    out += "  \"n\": " + std::to_string(n) + ",\n";
    out += "  \"M\": " + std::to_string(big) + ",\n";
    out += "  \"P\": " + std::to_string(p) + ",\n";
    out += "  \"rank_of_b\": " + std::to_string(model.rank_of_b) + ",\n";
    out += "  \"mode\": \"" + to_string(model.preprocessor.mode) + "\",\n";
    append_array(out, "s0", model.preprocessor.s0.data(), m);
    append_array(out, "w0", model.preprocessor.w0.data(), n * m);
    append_array(out, "v0", model.v0.data(), big);
    append_array(out, "eigenvalues", model.eigenvalues.data(), p);
    append_array(out, "weights", model.weights.data(), p * big, true);
    out += "}\n";
    return out;
}

SfaModel parse_model(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("model document: parse error: ") +
                                 e.what());
    }
    if (!doc.is_object())
        throw std::runtime_error("model document: top level must be an object");

    const json& version = field(doc, "version");
    if (!version.is_string() || version.get<std::string>() != kVersion) {
        const std::string got = version.is_string() ? version.get<std::string>()
                                                    : version.dump();
        throw std::runtime_error("model document: unsupported version: " + got);
    }

    const json& method = field(doc, "method");
    const json& mode = field(doc, "mode");
    if (!method.is_string() || !mode.is_string())
        throw std::runtime_error("model document: method and mode must be strings");

    const std::size_t m = get_count(doc, "m");
    const std::size_t n = get_count(doc, "n");
    const std::size_t big = get_count(doc, "M");
    const std::size_t p = get_count(doc, "P");
    const std::size_t rank = get_count(doc, "rank_of_b");
    if (m == 0 || n == 0 || n > m)
        throw std::runtime_error("model document: need 1 <= n <= m");
    if (big != expansion_dim(n))
        throw std::runtime_error("model document: M does not match n");

    const json& eps = field(doc, "epsilon");
    if (!eps.is_number())
        throw std::runtime_error("model document: epsilon must be a number");

    SfaModel model;
    try {
        model.method = method_from_string(method.get<std::string>());
        model.preprocessor.mode = preprocess_mode_from_string(mode.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("model document: ") + e.what());
    }
    model.epsilon = eps.get<double>();
    if (!(model.epsilon > 0.0 && model.epsilon < 1.0))
        throw std::runtime_error("model document: epsilon must lie in (0, 1)");
    model.expanded_dim = big;
    model.rank_of_b = rank;
    model.preprocessor.s0 = get_numbers(doc, "s0", m);
    model.preprocessor.w0 = to_matrix(get_numbers(doc, "w0", n * m), n, m);
    model.v0 = get_numbers(doc, "v0", big);
    model.eigenvalues = get_numbers(doc, "eigenvalues", p);
    model.weights = to_matrix(get_numbers(doc, "weights", p * big), p, big);
    model.unstable = model.method == Method::kGenEig && rank < big;
    return model;
}

void save_model(const SfaModel& model, const std::string& path) {
    const std::string text = serialize_model(model);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    out.close();
    if (!out) throw std::runtime_error("write failed: " + path);
}

SfaModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    if (!in.good() && !in.eof())
        throw std::runtime_error("read failed: " + path);
    try {
        return parse_model(text);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

}  // namespace sfa
