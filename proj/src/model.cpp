#include "sfa/model.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "sfa/expansion.hpp"
#include "sfa/jacobi.hpp"
#include "sfa/moments.hpp"
#include "sfa/sphering.hpp"

namespace sfa {
namespace {

// Tiny negatives on the slow end are roundoff from a PSD matrix.
void clamp_eigenvalues(std::vector<double>& lambdas) {
    for (double& l : lambdas)
        if (l < 0.0 && l >= -tol::kEigenClampAbs) l = 0.0;
}

void orient_row(double* w, std::size_t len) {
    std::size_t pivot = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        const double mag = std::fabs(w[i]);
        if (mag > best) {
            best = mag;
            pivot = i;
        }
    }
    if (w[pivot] < 0.0)
        for (std::size_t i = 0; i < len; ++i) w[i] = -w[i];
}

// Standard lower-triangular factorization; empty on any non-positive
// pivot, which is how rank deficiency shows up here.
std::optional<Matrix> cholesky(const SymmetricMatrix& b) {
    const std::size_t n = b.order();
    const Matrix& a = b.dense();
    Matrix l(n, n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > 0.0) || !std::isfinite(d)) return std::nullopt;
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / ljj;
        }
    }
    return l;
}

// Solves L Y = X in place (L lower triangular), column by column.
void forward_solve(const Matrix& l, Matrix& x) {
    const std::size_t n = l.rows();
    for (std::size_t i = 0; i < n; ++i) {
        const double* li = l.row(i);
        double* xi = x.row(i);
        for (std::size_t k = 0; k < i; ++k) {
            const double lik = li[k];
            if (lik == 0.0) continue;
            const double* xk = x.row(k);
            for (std::size_t c = 0; c < x.cols(); ++c) xi[c] -= lik * xk[c];
        }
        const double inv = 1.0 / li[i];
        for (std::size_t c = 0; c < x.cols(); ++c) xi[c] *= inv;
    }
}

// Solves L^T w = u for one vector (back substitution).
std::vector<double> back_solve_transposed(const Matrix& l,
                                          const std::vector<double>& u) {
    const std::size_t n = l.rows();
    std::vector<double> w(u);
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t k = ii + 1; k < n; ++k) w[ii] -= l(k, ii) * w[k];
        w[ii] /= l(ii, ii);
    }
    return w;
}

}  // namespace

std::string to_string(Method method) {
    switch (method) {
        case Method::kGenEig: return "GEN_EIG";
        case Method::kSvdSfa: return "SVD_SFA";
    }
    throw std::invalid_argument("unknown method");
}

Method method_from_string(const std::string& name) {
    if (name == "GEN_EIG") return Method::kGenEig;
    if (name == "SVD_SFA") return Method::kSvdSfa;
    throw std::invalid_argument("unknown method: " + name);
}

TrainingMoments accumulate_training(const std::vector<Matrix>& chunks,
                                    const Preprocessor& pre) {
    if (chunks.empty())
        throw std::invalid_argument("accumulate_training: no chunks");
    const std::size_t big = expansion_dim(pre.output_dim());
    MomentAccumulator acc(big);
    for (const Matrix& chunk : chunks)
        acc.update(expand_rows(pre.apply_rows(chunk)));
    const auto fin = acc.finalize();
    return {fin.mean, fin.b, fin.c_prime, fin.count, fin.derivative_count};
}

TrainingMoments accumulate_training(const Matrix& series,
                                    const Preprocessor& pre,
                                    std::size_t chunk_len) {
    const std::size_t n = series.rows();
    if (chunk_len == 0 || chunk_len >= n) {
        std::vector<Matrix> one{series};
        return accumulate_training(one, pre);
    }
    if (chunk_len < 2)
        throw std::invalid_argument("accumulate_training: chunk_len must be >= 2");
    std::vector<Matrix> chunks;
    for (std::size_t lo = 0; lo < n; lo += chunk_len) {
        std::size_t hi = std::min(lo + chunk_len, n);
        if (n - hi == 1) hi = n;  // avoid a trailing one-sample chunk
        Matrix chunk(hi - lo, series.cols());
        for (std::size_t r = lo; r < hi; ++r)
            for (std::size_t c = 0; c < series.cols(); ++c)
                chunk(r - lo, c) = series(r, c);
        chunks.push_back(std::move(chunk));
        if (hi == n) break;
    }
    return accumulate_training(chunks, pre);
}

SfaModel train_svd_sfa(const TrainingMoments& tm, const Preprocessor& pre,
                       double epsilon) {
    const std::size_t big = tm.b.order();
    const EigenDecomposition eig_b = sym_eig(tm.b);
    const SpheringTransform st = sphering_transform(eig_b, tm.v0, epsilon);
    const std::size_t p = st.output_dim();

    const SymmetricMatrix c = congruence(st.s_matrix, tm.c_prime);
    const EigenDecomposition eig_c = sym_eig(c);

    // Eigenvalues of C close to zero relative to its largest get
    // excluded, mirroring the cutoff on B.  On well-posed data the
    // slow eigenvalues sit far above this, so nothing is dropped.
    std::size_t lo = 0;
    const double cmax = eig_c.eigenvalues.back();
    if (cmax > 0.0) {
        while (lo < p && eig_c.eigenvalues[lo] / cmax <= epsilon) ++lo;
    }
    const std::size_t kept = p - lo;

    SfaModel model;
    model.preprocessor = pre;
    model.v0 = tm.v0;
    model.method = Method::kSvdSfa;
    model.epsilon = epsilon;
    model.rank_of_b = p;
    model.expanded_dim = big;
    model.unstable = false;

    model.eigenvalues.assign(eig_c.eigenvalues.begin() + lo,
                             eig_c.eigenvalues.end());
    clamp_eigenvalues(model.eigenvalues);

    // w'_j = S^T w_j; as rows, that is w_j^T S.
    model.weights = Matrix(kept, big);
    for (std::size_t j = 0; j < kept; ++j) {
        const std::size_t col = lo + j;
        for (std::size_t cidx = 0; cidx < big; ++cidx) {
            double acc = 0.0;
            for (std::size_t r = 0; r < p; ++r)
                acc += eig_c.eigenvectors(r, col) * st.s_matrix(r, cidx);
            model.weights(j, cidx) = acc;
        }
    }
    return model;
}

SfaModel train_gen_eig(const TrainingMoments& tm, const Preprocessor& pre,
                       double epsilon) {
    const std::size_t big = tm.b.order();
    const EigenDecomposition eig_b = sym_eig(tm.b);
    const std::size_t rank = numerical_rank(eig_b, epsilon);

    SfaModel model;
    model.preprocessor = pre;
    model.v0 = tm.v0;
    model.method = Method::kGenEig;
    model.epsilon = epsilon;
    model.rank_of_b = rank;
    model.expanded_dim = big;
    model.unstable = rank < big;

    const std::optional<Matrix> chol = cholesky(tm.b);
    if (chol) {
        // B = L L^T; solve the standard problem for L^-1 C' L^-T and
        // back-transform.  w'^T B w' = 1 holds by construction.
        const Matrix& l = *chol;
        Matrix y = tm.c_prime.dense();
        forward_solve(l, y);          // y = L^-1 C'
        Matrix yt = transpose(y);     // yt = C' L^-T ... transposed
        forward_solve(l, yt);         // yt = L^-1 C' L^-T (symmetric)
        const EigenDecomposition eig = sym_eig(SymmetricMatrix(yt));

        model.eigenvalues = eig.eigenvalues;
        clamp_eigenvalues(model.eigenvalues);
        model.weights = Matrix(big, big);
        for (std::size_t j = 0; j < big; ++j) {
            std::vector<double> u(big);
            for (std::size_t i = 0; i < big; ++i) u[i] = eig.eigenvectors(i, j);
            std::vector<double> w = back_solve_transposed(l, u);
            for (std::size_t i = 0; i < big; ++i) model.weights(j, i) = w[i];
            orient_row(model.weights.row(j), big);
        }
        return model;
    }

    // Naive fallback: whiten with the full eigensystem of B, taking
    // every eigenvalue with no cutoff.  Near-zero eigenvalues blow up
    // the scale, which is exactly the instability this path is meant
    // to exhibit.  The max() only keeps the arithmetic finite when an
    // eigenvalue is exactly zero; it caps nothing of practical size.
    model.unstable = true;
    const double lmax_abs = std::fabs(eig_b.eigenvalues.back());
    Matrix f(big, big);
    for (std::size_t k = 0; k < big; ++k) {
        const std::size_t col = big - 1 - k;  // descending order
        const double lambda = std::fabs(eig_b.eigenvalues[col]);
        const double scale =
            1.0 / std::sqrt(std::max(lambda, lmax_abs * 1e-30));
        for (std::size_t j = 0; j < big; ++j)
            f(k, j) = scale * eig_b.eigenvectors(j, col);
    }
    const SymmetricMatrix c_hat = congruence(f, tm.c_prime);
    if (!c_hat.dense().all_finite())
        throw std::runtime_error(
            "train_gen_eig: unstable reduction produced non-finite values");
    const EigenDecomposition eig = sym_eig(c_hat);

    model.eigenvalues = eig.eigenvalues;
    clamp_eigenvalues(model.eigenvalues);
    model.weights = Matrix(big, big);
    for (std::size_t j = 0; j < big; ++j) {
        // w' = F^T u, then force the unit-variance normalization
        // w'^T B w' = 1 as far as the data allows.
        for (std::size_t i = 0; i < big; ++i) {
            double acc = 0.0;
            for (std::size_t r = 0; r < big; ++r)
                acc += f(r, i) * eig.eigenvectors(r, j);
            model.weights(j, i) = acc;
        }
        std::vector<double> w(model.weights.row(j),
                              model.weights.row(j) + big);
        const double q = quadratic_form(tm.b, w);
        const double scale =
            (q != 0.0 && std::isfinite(q)) ? 1.0 / std::sqrt(std::fabs(q)) : 1.0;
        for (std::size_t i = 0; i < big; ++i) model.weights(j, i) *= scale;
        orient_row(model.weights.row(j), big);
    }
    return model;
}

namespace {

Matrix apply_impl(const SfaModel& model, const Matrix& series, std::size_t k,
                  bool parallel) {
    if (series.cols() != model.preprocessor.input_dim())
        throw std::invalid_argument("apply_model: series dimension mismatch");
    if (k < 1 || k > model.output_count())
        throw std::invalid_argument(
            "apply_model: only " + std::to_string(model.output_count()) +
            " components available");

    const std::size_t big = model.expanded_dim;
    const std::size_t n = model.preprocessor.output_dim();
    // A model assembled by hand (or corrupted) could disagree with the
    // expansion layout; catch that before writing past buffers.
    if (big != expansion_dim(n) || model.v0.size() != big ||
        model.weights.cols() != big)
        throw std::invalid_argument("apply_model: inconsistent model dimensions");
    Matrix out(series.rows(), k);

#pragma omp parallel for schedule(static) if (parallel)
    for (long long t = 0; t < static_cast<long long>(series.rows()); ++t) {
        const auto r = static_cast<std::size_t>(t);
        std::vector<double> s(series.row(r), series.row(r) + series.cols());
        std::vector<double> x = model.preprocessor.apply(s);
        std::vector<double> v(big);
        expand(x.data(), n, v.data());
        for (std::size_t i = 0; i < big; ++i) v[i] -= model.v0[i];
        for (std::size_t j = 0; j < k; ++j) {
            const double* wj = model.weights.row(j);
            double acc = 0.0;
            for (std::size_t i = 0; i < big; ++i) acc += wj[i] * v[i];
            out(r, j) = acc;
        }
    }
    return out;
}

}  // namespace

Matrix apply_model(const SfaModel& model, const Matrix& series, std::size_t k) {
    return apply_impl(model, series, k, true);
}

Matrix apply_model_serial(const SfaModel& model, const Matrix& series,
                          std::size_t k) {
    return apply_impl(model, series, k, false);
}

}  // namespace sfa
