#include "sfa/preprocessor.hpp"

#include <cmath>
#include <stdexcept>

#include "sfa/jacobi.hpp"
#include "sfa/moments.hpp"

namespace sfa {

std::string to_string(PreprocessMode mode) {
    switch (mode) {
        case PreprocessMode::kSphere: return "sphere";
        case PreprocessMode::kNormalize: return "normalize";
        case PreprocessMode::kNone: return "none";
    }
    throw std::invalid_argument("unknown preprocess mode");
}

PreprocessMode preprocess_mode_from_string(const std::string& name) {
    if (name == "sphere") return PreprocessMode::kSphere;
    if (name == "normalize") return PreprocessMode::kNormalize;
    if (name == "none") return PreprocessMode::kNone;
    throw std::invalid_argument("unknown preprocess mode: " + name);
}

std::vector<double> Preprocessor::apply(const std::vector<double>& s) const {
    if (s.size() != input_dim())
        throw std::invalid_argument("Preprocessor::apply: dimension mismatch");
    std::vector<double> centered(s);
    for (std::size_t i = 0; i < centered.size(); ++i) centered[i] -= s0[i];
    return matvec(w0, centered);
}

Matrix Preprocessor::apply_rows(const Matrix& chunk) const {
    if (chunk.cols() != input_dim())
        throw std::invalid_argument("Preprocessor::apply_rows: dimension mismatch");
    const std::size_t n = output_dim(), m = input_dim();
    Matrix out(chunk.rows(), n);
#pragma omp parallel for schedule(static)
    for (long long t = 0; t < static_cast<long long>(chunk.rows()); ++t) {
        const auto r = static_cast<std::size_t>(t);
        const double* in = chunk.row(r);
        double* o = out.row(r);
        for (std::size_t i = 0; i < n; ++i) {
            const double* wi = w0.row(i);
            double acc = 0.0;
            for (std::size_t j = 0; j < m; ++j) acc += wi[j] * (in[j] - s0[j]);
            o[i] = acc;
        }
    }
    return out;
}

Preprocessor fit_preprocessor(const Matrix& series, PreprocessMode mode,
                              std::size_t n, double epsilon) {
    const std::size_t m = series.cols();
    if (series.rows() < 2)
        throw std::invalid_argument("fit_preprocessor: need at least 2 samples");
    if (n < 1 || n > m)
        throw std::invalid_argument("fit_preprocessor: need 1 <= n <= input dimension");
    if (mode != PreprocessMode::kSphere && n != m)
        throw std::invalid_argument("fit_preprocessor: this mode requires n = m");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("fit_preprocessor: epsilon must lie in (0, 1)");

    MomentAccumulator acc(m);
    acc.update(series);
    const auto fin = acc.finalize();

    Preprocessor pre;
    pre.mode = mode;
    pre.s0 = fin.mean;

    switch (mode) {
        case PreprocessMode::kSphere: {
            const EigenDecomposition eig = sym_eig(fin.b);
            const double lmax = eig.eigenvalues.back();
            if (lmax <= 0.0) throw std::runtime_error("degenerate covariance");
            const double floor = epsilon * lmax;
            pre.w0 = Matrix(n, m);
            for (std::size_t k = 0; k < n; ++k) {
                // k-th largest eigenpair; ascending storage.
                const std::size_t col = m - 1 - k;
                const double lambda = eig.eigenvalues[col];
                const double scale = 1.0 / std::sqrt(std::max(lambda, floor));
                for (std::size_t j = 0; j < m; ++j)
                    pre.w0(k, j) = scale * eig.eigenvectors(j, col);
            }
            break;
        }
        case PreprocessMode::kNormalize: {
            pre.w0 = Matrix(m, m, 0.0);
            for (std::size_t i = 0; i < m; ++i) {
                const double var = fin.b.dense()(i, i);
                if (var <= 0.0)
                    throw std::runtime_error(
                        "fit_preprocessor: zero-variance component in normalize mode");
                pre.w0(i, i) = 1.0 / std::sqrt(var);
            }
            break;
        }
        case PreprocessMode::kNone: {
            pre.w0 = Matrix(m, m, 0.0);
            for (std::size_t i = 0; i < m; ++i) pre.w0(i, i) = 1.0;
            break;
        }
    }
    return pre;
}

}  // namespace sfa
