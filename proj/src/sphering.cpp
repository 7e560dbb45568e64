#include "sfa/sphering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sfa/tolerances.hpp"

namespace sfa {
namespace {

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("sphering: epsilon must lie in (0, 1)");
}

// Eigenvalues arrive ascending from sym_eig; we work descending.
// Tiny negative values are roundoff from a semidefinite matrix and get
// clamped so the reported spectrum is not misleading.
std::vector<double> descending_spectrum(const EigenDecomposition& eig) {
    std::vector<double> spectrum(eig.eigenvalues.rbegin(), eig.eigenvalues.rend());
    if (spectrum.empty()) return spectrum;
    const double lmax = spectrum.front();
    if (lmax > 0.0) {
        const double clamp = tol::kPsdClampRel * lmax;
        for (double& l : spectrum)
            if (l < 0.0 && -l <= clamp) l = 0.0;
    }
    return spectrum;
}

std::size_t count_kept(const std::vector<double>& spectrum, double epsilon) {
    const double lmax = spectrum.empty() ? 0.0 : spectrum.front();
    if (lmax <= 0.0) throw std::runtime_error("degenerate covariance");
    std::size_t p = 0;
    while (p < spectrum.size() && spectrum[p] / lmax > epsilon) ++p;
    if (p == 0) throw std::runtime_error("degenerate covariance");
    return p;
}

}  // namespace

std::vector<double> SpheringTransform::apply(const std::vector<double>& x) const {
    if (x.size() != input_dim())
        throw std::invalid_argument("SpheringTransform::apply: dimension mismatch");
    std::vector<double> centered(x);
    for (std::size_t i = 0; i < centered.size(); ++i) centered[i] -= mean[i];
    return matvec(s_matrix, centered);
}

SpheringTransform sphering_transform(const EigenDecomposition& eig,
                                     const std::vector<double>& mean,
                                     double epsilon) {
    check_epsilon(epsilon);
    const std::size_t m = eig.eigenvalues.size();
    if (mean.size() != m)
        throw std::invalid_argument("sphering: mean length must match matrix order");

    SpheringTransform st;
    st.epsilon = epsilon;
    st.mean = mean;
    st.spectrum = descending_spectrum(eig);
    const std::size_t p = count_kept(st.spectrum, epsilon);

    st.kept_indices.resize(p);
    for (std::size_t k = 0; k < p; ++k) st.kept_indices[k] = k;
    st.dropped_indices.resize(m - p);
    for (std::size_t k = p; k < m; ++k) st.dropped_indices[k - p] = k;

    // Eigenvector columns are stored ascending; kept index k in the
    // descending order is column m-1-k.
    st.s_matrix = Matrix(p, m);
    for (std::size_t k = 0; k < p; ++k) {
        const std::size_t col = m - 1 - k;
        const double scale = 1.0 / std::sqrt(st.spectrum[k]);
        for (std::size_t j = 0; j < m; ++j)
            st.s_matrix(k, j) = scale * eig.eigenvectors(j, col);
    }
    return st;
}

SpheringTransform sphering_transform(const SymmetricMatrix& b,
                                     const std::vector<double>& mean,
                                     double epsilon) {
    return sphering_transform(sym_eig(b), mean, epsilon);
}

SpheringTransform sphering_transform(const SymmetricMatrix& b, double epsilon) {
    return sphering_transform(b, std::vector<double>(b.order(), 0.0), epsilon);
}

std::size_t numerical_rank(const EigenDecomposition& eig, double epsilon) {
    check_epsilon(epsilon);
    return count_kept(descending_spectrum(eig), epsilon);
}

std::size_t numerical_rank(const SymmetricMatrix& b, double epsilon) {
    return numerical_rank(sym_eig(b), epsilon);
}

}  // namespace sfa
