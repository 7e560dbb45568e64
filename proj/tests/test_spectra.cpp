#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sfa/jacobi.hpp"
#include "sfa/logistic.hpp"
#include "sfa/matrix.hpp"
#include "sfa/moments.hpp"
#include "sfa/sphering.hpp"
#include "sfa/tolerances.hpp"

using namespace sfa;

namespace {

SymmetricMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t n = rows.size();
    Matrix a(n, n);
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (double v : row) a(i, j++) = v;
        ++i;
    }
    return SymmetricMatrix(a);
}

// Deterministic random symmetric matrix for property tests.
SymmetricMatrix random_symmetric(std::size_t n, std::uint64_t seed) {
    GaussianSampler gauss(seed);
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = gauss.next();
    return SymmetricMatrix(a);
}

// Builds Q diag(spectrum) Q^T with Q the eigenbasis of a random
// symmetric matrix; gives exact control over the spectrum.
SymmetricMatrix with_spectrum(const std::vector<double>& spectrum,
                              std::uint64_t seed) {
    const std::size_t n = spectrum.size();
    const EigenDecomposition basis = sym_eig(random_symmetric(n, seed));
    Matrix out(n, n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) += spectrum[k] * basis.eigenvectors(i, k) *
                             basis.eigenvectors(j, k);
    return SymmetricMatrix(out);
}

void check_eigen_invariants(const SymmetricMatrix& a,
                            const EigenDecomposition& eig) {
    const std::size_t n = a.order();
    REQUIRE(eig.eigenvalues.size() == n);
    for (std::size_t j = 1; j < n; ++j)
        CHECK(eig.eigenvalues[j - 1] <= eig.eigenvalues[j]);

    // Orthonormality of the eigenvector columns.
    for (std::size_t c1 = 0; c1 < n; ++c1)
        for (std::size_t c2 = c1; c2 < n; ++c2) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                dot += eig.eigenvectors(i, c1) * eig.eigenvectors(i, c2);
            const double want = c1 == c2 ? 1.0 : 0.0;
            CHECK(std::fabs(dot - want) <= tol::kOrthonormality);
        }

    // Residual ||A v - lambda v||.
    const double scale = std::max(
        1.0, std::max(std::fabs(eig.eigenvalues.front()),
                      std::fabs(eig.eigenvalues.back())));
    for (std::size_t c = 0; c < n; ++c) {
        double rsq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double av = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                av += a(i, j) * eig.eigenvectors(j, c);
            const double r = av - eig.eigenvalues[c] * eig.eigenvectors(i, c);
            rsq += r * r;
        }
        CHECK(std::sqrt(rsq) <= tol::kResidual * scale);
    }

    // Sign convention: the largest-magnitude entry of each column is
    // positive (first such index on ties).
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = 0;
        double best = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double mag = std::fabs(eig.eigenvectors(i, c));
            if (mag > best) {
                best = mag;
                pivot = i;
            }
        }
        CHECK(eig.eigenvectors(pivot, c) >= 0.0);
    }
}

}  // namespace

TEST_CASE("matrix products and transpose") {
    Matrix a(2, 3);
    a(0, 0) = 1; a(0, 1) = 2; a(0, 2) = 3;
    a(1, 0) = 4; a(1, 1) = 5; a(1, 2) = 6;
    Matrix b(3, 2);
    b(0, 0) = 7; b(0, 1) = 8;
    b(1, 0) = 9; b(1, 1) = 10;
    b(2, 0) = 11; b(2, 1) = 12;

    const Matrix ab = matmul(a, b);
    CHECK(ab(0, 0) == doctest::Approx(58));
    CHECK(ab(0, 1) == doctest::Approx(64));
    CHECK(ab(1, 0) == doctest::Approx(139));
    CHECK(ab(1, 1) == doctest::Approx(154));

    const Matrix at = transpose(a);
    CHECK(at.rows() == 3);
    CHECK(at(2, 1) == 6);

    const std::vector<double> y = matvec(a, {1.0, 1.0, 1.0});
    CHECK(y[0] == doctest::Approx(6));
    CHECK(y[1] == doctest::Approx(15));

    CHECK_THROWS_AS(matmul(a, a), std::invalid_argument);
}

TEST_CASE("symmetric wrapper symmetrizes and congruence matches direct product") {
    Matrix raw(2, 2);
    raw(0, 0) = 1; raw(0, 1) = 2;
    raw(1, 0) = 4; raw(1, 1) = 3;
    const SymmetricMatrix s(raw);
    CHECK(s(0, 1) == 3.0);
    CHECK(s(1, 0) == 3.0);

    Matrix a(1, 2);
    a(0, 0) = 2; a(0, 1) = 1;
    const SymmetricMatrix c = congruence(a, s);
    // [2 1] [[1,3],[3,3]] [2;1] = [2 1][5;9] = 19
    CHECK(c(0, 0) == doctest::Approx(19));

    CHECK(quadratic_form(s, {2.0, 1.0}) == doctest::Approx(19));
}

TEST_CASE("sym_eig on hand-checked matrices") {
    SUBCASE("[[2,1],[1,2]] has eigenvalues 1 and 3") {
        const SymmetricMatrix a = from_rows({{2, 1}, {1, 2}});
        const EigenDecomposition eig = sym_eig(a);
        CHECK(eig.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(eig.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-12));
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        CHECK(std::fabs(std::fabs(eig.eigenvectors(0, 0)) - inv_sqrt2) < 1e-12);
        CHECK(std::fabs(std::fabs(eig.eigenvectors(0, 1)) - inv_sqrt2) < 1e-12);
        check_eigen_invariants(a, eig);
    }
    SUBCASE("identity of order 3") {
        const SymmetricMatrix a = from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
        const EigenDecomposition eig = sym_eig(a);
        for (double l : eig.eigenvalues) CHECK(l == doctest::Approx(1.0));
        check_eigen_invariants(a, eig);
    }
    SUBCASE("diag(0, 5)") {
        const SymmetricMatrix a = from_rows({{0, 0}, {0, 5}});
        const EigenDecomposition eig = sym_eig(a);
        CHECK(eig.eigenvalues[0] == doctest::Approx(0.0));
        CHECK(eig.eigenvalues[1] == doctest::Approx(5.0));
    }
    SUBCASE("order 1") {
        SymmetricMatrix a(1);
        a.set(0, 0, -2.5);
        const EigenDecomposition eig = sym_eig(a);
        CHECK(eig.eigenvalues[0] == -2.5);
        CHECK(eig.eigenvectors(0, 0) == 1.0);
    }
}

TEST_CASE("sym_eig rejects bad input") {
    CHECK_THROWS_AS(sym_eig(SymmetricMatrix()), std::invalid_argument);
    SymmetricMatrix a(2);
    a.set(0, 0, std::nan(""));
    CHECK_THROWS_AS(sym_eig(a), std::invalid_argument);
}

TEST_CASE("sym_eig invariants hold on random matrices, serial and parallel agree") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const std::size_t n = 3 + 4 * static_cast<std::size_t>(seed);
        const SymmetricMatrix a = random_symmetric(n, seed);
        const EigenDecomposition par = jacobi_eigen_parallel(a);
        const EigenDecomposition ser = jacobi_eigen_serial(a);
        check_eigen_invariants(a, par);
        check_eigen_invariants(a, ser);
        for (std::size_t j = 0; j < n; ++j) {
            const double scale = std::max(1.0, std::fabs(ser.eigenvalues[j]));
            CHECK(std::fabs(par.eigenvalues[j] - ser.eigenvalues[j]) / scale <=
                  1e-10);
        }
    }
}

TEST_CASE("sphering transform hand-checked cases") {
    SUBCASE("diag(4,1) keeps both directions") {
        const SpheringTransform st =
            sphering_transform(from_rows({{4, 0}, {0, 1}}), 1e-7);
        REQUIRE(st.output_dim() == 2);
        CHECK(st.spectrum[0] == doctest::Approx(4.0));
        CHECK(st.spectrum[1] == doctest::Approx(1.0));
        // Rows in descending eigenvalue order, up to sign.
        CHECK(std::fabs(st.s_matrix(0, 0)) == doctest::Approx(0.5));
        CHECK(std::fabs(st.s_matrix(0, 1)) == doctest::Approx(0.0));
        CHECK(std::fabs(st.s_matrix(1, 1)) == doctest::Approx(1.0));
        CHECK(st.kept_indices == std::vector<std::size_t>{0, 1});
        CHECK(st.dropped_indices.empty());
    }
    SUBCASE("exact zero eigenvalue drops a row") {
        const SpheringTransform st =
            sphering_transform(from_rows({{2, 0}, {0, 0}}), 1e-7);
        REQUIRE(st.output_dim() == 1);
        CHECK(std::fabs(st.s_matrix(0, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK(std::fabs(st.s_matrix(0, 1)) == doctest::Approx(0.0));
        CHECK(st.dropped_indices == std::vector<std::size_t>{1});
    }
    SUBCASE("identity is already sphered") {
        const SpheringTransform st =
            sphering_transform(from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 1e-7);
        CHECK(st.output_dim() == 3);
        const SymmetricMatrix check =
            congruence(st.s_matrix, from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                CHECK(std::fabs(check(i, j) - (i == j ? 1.0 : 0.0)) <=
                      tol::kSpheringIdentity);
    }
}

TEST_CASE("sphering identity property on random positive-definite matrices") {
    for (std::uint64_t seed = 10; seed < 16; ++seed) {
        const std::size_t n = 4 + 2 * static_cast<std::size_t>(seed - 10);
        GaussianSampler gauss(seed * 77);
        std::vector<double> spectrum(n);
        for (double& l : spectrum) l = 0.5 + std::fabs(gauss.next()) * 4.0;
        const SymmetricMatrix b = with_spectrum(spectrum, seed);
        const SpheringTransform st = sphering_transform(b, 1e-7);
        REQUIRE(st.output_dim() == n);
        const SymmetricMatrix eye = congruence(st.s_matrix, b);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                CHECK(std::fabs(eye(i, j) - (i == j ? 1.0 : 0.0)) <=
                      tol::kSpheringIdentity);
    }
}

TEST_CASE("rank-deficient sphering keeps P = M - r and still whitens") {
    // Two exact zeros in a 6-dimensional spectrum.
    const std::vector<double> spectrum = {3.0, 1.5, 0.8, 0.2, 0.0, 0.0};
    const SymmetricMatrix b = with_spectrum(spectrum, 3);
    const SpheringTransform st = sphering_transform(b, 1e-7);
    CHECK(st.output_dim() == 4);
    CHECK(st.dropped_indices.size() == 2);
    const SymmetricMatrix eye = congruence(st.s_matrix, b);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(std::fabs(eye(i, j) - (i == j ? 1.0 : 0.0)) <=
                  tol::kSpheringIdentity);
}

TEST_CASE("sphering transform applies mean subtraction") {
    const SymmetricMatrix b = from_rows({{4, 0}, {0, 1}});
    const SpheringTransform st = sphering_transform(b, {10.0, -3.0}, 1e-7);
    const std::vector<double> y = st.apply({12.0, -3.0});
    // Centered input (2, 0); first row is (+-1/2, 0).
    CHECK(std::fabs(y[0]) == doctest::Approx(1.0));
    CHECK(y[1] == doctest::Approx(0.0));
}

TEST_CASE("sphering and rank errors") {
    const SymmetricMatrix zero(3);
    CHECK_THROWS_WITH_AS(sphering_transform(zero, 1e-7), "degenerate covariance",
                         std::runtime_error);
    CHECK_THROWS_AS(numerical_rank(zero, 1e-7), std::runtime_error);
    const SymmetricMatrix ok = from_rows({{1, 0}, {0, 1}});
    CHECK_THROWS_AS(sphering_transform(ok, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(sphering_transform(ok, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(sphering_transform(ok, {1.0, 2.0, 3.0}, 1e-7),
                    std::invalid_argument);
}

TEST_CASE("numerical rank counts eigenvalue ratios above the cutoff") {
    SymmetricMatrix eye(5);
    for (std::size_t i = 0; i < 5; ++i) eye.set(i, i, 1.0);
    CHECK(numerical_rank(eye, 1e-7) == 5);

    SymmetricMatrix tiny(3);
    tiny.set(0, 0, 1.0);
    tiny.set(1, 1, 1e-20);
    tiny.set(2, 2, 1e-20);
    CHECK(numerical_rank(tiny, 1e-7) == 1);

    // Strictly-above semantics: ratio exactly epsilon is dropped.
    SymmetricMatrix edge(2);
    edge.set(0, 0, 1.0);
    edge.set(1, 1, 1e-7);
    CHECK(numerical_rank(edge, 1e-7) == 1);
}

TEST_CASE("moment accumulator matches hand computations") {
    SUBCASE("two opposite points") {
        Matrix chunk(2, 2);
        chunk(0, 0) = 1; chunk(0, 1) = 0;
        chunk(1, 0) = -1; chunk(1, 1) = 0;
        MomentAccumulator acc(2);
        acc.update(chunk);
        const auto fin = acc.finalize();
        CHECK(fin.mean[0] == doctest::Approx(0.0));
        CHECK(fin.mean[1] == doctest::Approx(0.0));
        CHECK(fin.b(0, 0) == doctest::Approx(1.0));
        CHECK(fin.b(0, 1) == doctest::Approx(0.0));
        CHECK(fin.b(1, 1) == doctest::Approx(0.0));
    }
    SUBCASE("scalar pair {0, 1}: population variance and unit difference") {
        Matrix chunk(2, 1);
        chunk(0, 0) = 0;
        chunk(1, 0) = 1;
        MomentAccumulator acc(1);
        acc.update(chunk);
        const auto fin = acc.finalize();
        CHECK(fin.b(0, 0) == doctest::Approx(0.25));
        CHECK(fin.c_prime(0, 0) == doctest::Approx(1.0));
        CHECK(fin.count == 2);
        CHECK(fin.derivative_count == 1);
    }
    SUBCASE("constant chunk gives zero covariance and zero derivative moment") {
        Matrix chunk(7, 2, 3.5);
        MomentAccumulator acc(2);
        acc.update(chunk);
        const auto fin = acc.finalize();
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                CHECK(fin.b(i, j) == doctest::Approx(0.0));
                CHECK(fin.c_prime(i, j) == doctest::Approx(0.0));
            }
    }
}

TEST_CASE("chunked accumulation: covariance matches the whole series, "
          "derivatives skip boundaries") {
    GaussianSampler gauss(99);
    Matrix whole(10, 2);
    for (std::size_t i = 0; i < 10; ++i)
        for (std::size_t j = 0; j < 2; ++j) whole(i, j) = gauss.next();

    Matrix first(6, 2), second(4, 2);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 2; ++j) first(i, j) = whole(i, j);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 2; ++j) second(i, j) = whole(6 + i, j);

    MomentAccumulator acc_whole(2), acc_chunks(2);
    acc_whole.update(whole);
    acc_chunks.update(first);
    acc_chunks.update(second);
    const auto fw = acc_whole.finalize();
    const auto fc = acc_chunks.finalize();

    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(fc.b(i, j) ==
                  doctest::Approx(fw.b(i, j)).epsilon(tol::kChunkInvariance));

    // 9 pairs in the whole series, 8 after cutting between rows 5 and 6.
    CHECK(fw.derivative_count == 9);
    CHECK(fc.derivative_count == 8);

    // The chunked derivative moment equals the direct sum over
    // within-chunk pairs.
    SymmetricMatrix expect(2);
    for (std::size_t t = 0; t + 1 < 10; ++t) {
        if (t == 5) continue;  // the boundary pair
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = i; j < 2; ++j)
                expect.set(i, j, expect(i, j) + (whole(t + 1, i) - whole(t, i)) *
                                                    (whole(t + 1, j) - whole(t, j)));
    }
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(fc.c_prime(i, j) == doctest::Approx(expect(i, j) / 8.0));
}

TEST_CASE("accumulator agrees with a brute-force covariance oracle") {
    GaussianSampler gauss(1234);
    const std::size_t n = 200, d = 6;
    Matrix data(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) data(i, j) = gauss.next() + 0.3;

    MomentAccumulator acc(d);
    acc.update(data);
    const auto fin = acc.finalize();

    std::vector<double> mean(d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) mean[j] += data(i, j);
    for (double& m : mean) m /= static_cast<double>(n);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            double cov = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                cov += (data(i, a) - mean[a]) * (data(i, b) - mean[b]);
            cov /= static_cast<double>(n);
            CHECK(std::fabs(fin.b(a, b) - cov) <=
                  1e-12 * std::max(1.0, std::fabs(cov)));
        }
}

TEST_CASE("blocked update matches the serial reference") {
    GaussianSampler gauss(777);
    const std::size_t n = 2000, d = 10;
    Matrix data(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) data(i, j) = gauss.next();

    MomentAccumulator blocked(d), serial(d);
    blocked.update(data);
    serial.update_serial(data);
    CHECK(blocked.count() == serial.count());
    CHECK(blocked.derivative_count() == serial.derivative_count());
    const auto fb = blocked.finalize();
    const auto fs = serial.finalize();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            CHECK(std::fabs(fb.b(i, j) - fs.b(i, j)) <=
                  1e-12 * std::max(1.0, std::fabs(fs.b(i, j))));
            CHECK(std::fabs(fb.c_prime(i, j) - fs.c_prime(i, j)) <=
                  1e-12 * std::max(1.0, std::fabs(fs.c_prime(i, j))));
        }
}

TEST_CASE("merging accumulators equals feeding both chunks to one") {
    GaussianSampler gauss(5);
    Matrix a(50, 3), b(70, 3);
    for (std::size_t i = 0; i < 50; ++i)
        for (std::size_t j = 0; j < 3; ++j) a(i, j) = gauss.next();
    for (std::size_t i = 0; i < 70; ++i)
        for (std::size_t j = 0; j < 3; ++j) b(i, j) = gauss.next();

    MomentAccumulator one(3);
    one.update(a);
    one.update(b);
    MomentAccumulator left(3), right(3);
    left.update(a);
    right.update(b);
    left.merge(right);

    const auto f1 = one.finalize();
    const auto f2 = left.finalize();
    CHECK(f1.count == f2.count);
    CHECK(f1.derivative_count == f2.derivative_count);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(f1.b(i, j) == doctest::Approx(f2.b(i, j)).epsilon(1e-15));
}

TEST_CASE("accumulator input validation") {
    MomentAccumulator acc(3);
    CHECK_THROWS_AS(acc.update(Matrix(5, 2)), std::invalid_argument);
    CHECK_THROWS_AS(acc.update(Matrix(1, 3)), std::invalid_argument);
    CHECK_THROWS_AS(acc.finalize(), std::invalid_argument);
    CHECK_THROWS_AS(MomentAccumulator(0), std::invalid_argument);
    MomentAccumulator other(2);
    CHECK_THROWS_AS(acc.merge(other), std::invalid_argument);
}
