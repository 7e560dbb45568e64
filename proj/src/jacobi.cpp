#include "sfa/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace sfa {
namespace {

constexpr int kMaxSweeps = 50;

double off_diagonal_norm(const Matrix& a) {
    const std::size_t n = a.rows();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) acc += a(i, j) * a(i, j);
    return std::sqrt(2.0 * acc);
}

double frobenius_norm(const Matrix& a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * a(i, j);
    return std::sqrt(acc);
}

// Rotation angle that annihilates a(p,q).  Returns {c, s} with
// J = [[c, s], [-s, c]] acting on the (p, q) plane.
std::pair<double, double> rotation_angle(double app, double aqq, double apq) {
    const double tau = (aqq - app) / (2.0 * apq);
    double t;
    if (tau >= 0.0)
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    return {c, t * c};
}

// Sequential two-sided update a <- J^T a J plus v <- v J for one
// rotation in the (p, q) plane.  Used by the cyclic reference.
void apply_rotation(Matrix& a, Matrix& v, std::size_t p, std::size_t q,
                    double c, double s) {
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i) {
        const double aip = a(i, p), aiq = a(i, q);
        a(i, p) = c * aip - s * aiq;
        a(i, q) = s * aip + c * aiq;
    }
    for (std::size_t j = 0; j < n; ++j) {
        const double apj = a(p, j), aqj = a(q, j);
        a(p, j) = c * apj - s * aqj;
        a(q, j) = s * apj + c * aqj;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double vip = v(i, p), viq = v(i, q);
        v(i, p) = c * vip - s * viq;
        v(i, q) = s * vip + c * viq;
    }
}

// Shared postprocessing: sort ascending, orient each column so its
// largest-magnitude entry is positive.
EigenDecomposition finish(const Matrix& a, const Matrix& v) {
    const std::size_t n = a.rows();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&a](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.eigenvalues[j] = a(src, src);
        std::size_t pivot = 0;
        double best = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double mag = std::fabs(v(i, src));
            if (mag > best) {
                best = mag;
                pivot = i;
            }
        }
        const double sign = v(pivot, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = sign * v(i, src);
    }
    return out;
}

void check_input(const SymmetricMatrix& sym) {
    if (sym.order() == 0)
        throw std::invalid_argument("sym_eig: empty matrix");
    if (!sym.dense().all_finite())
        throw std::invalid_argument("sym_eig: non-finite input");
}

}  // namespace

EigenDecomposition jacobi_eigen_serial(const SymmetricMatrix& sym) {
    check_input(sym);
    Matrix a = sym.dense();
    const std::size_t n = a.rows();
    Matrix v(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;
    if (n == 1) return finish(a, v);

    const double stop = 1e-13 * std::max(1.0, frobenius_norm(a));
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_norm(a) <= stop) return finish(a, v);
        for (std::size_t p = 0; p < n - 1; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                // Skip rotations that cannot change the matrix at all.
                if (std::fabs(apq) <
                    1e-18 * (std::fabs(a(p, p)) + std::fabs(a(q, q))))
                    continue;
                const auto [c, s] = rotation_angle(a(p, p), a(q, q), apq);
                apply_rotation(a, v, p, q, c, s);
            }
    }
    if (off_diagonal_norm(a) <= stop) return finish(a, v);
    throw std::runtime_error("jacobi: no convergence after 50 sweeps");
}

EigenDecomposition jacobi_eigen_parallel(const SymmetricMatrix& sym) {
    check_input(sym);
    Matrix a = sym.dense();
    const std::size_t n = a.rows();
    Matrix v(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;
    if (n == 1) return finish(a, v);

    // Round-robin tournament over an even number of slots; when n is
    // odd the extra slot pairs with nobody that round.
    const std::size_t slots = (n % 2 == 0) ? n : n + 1;
    const std::size_t rounds = slots - 1;
    const std::size_t pairs = slots / 2;

    std::vector<std::size_t> ps(pairs), qs(pairs);
    std::vector<double> cs(pairs), ss(pairs);
    std::vector<char> active(pairs);

    const double stop = 1e-13 * std::max(1.0, frobenius_norm(a));
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_norm(a) <= stop) return finish(a, v);
        for (std::size_t r = 0; r < rounds; ++r) {
            // Circle method: slot 0 is fixed, the rest rotate by r.
            for (std::size_t i = 0; i < pairs; ++i) {
                const std::size_t lhs =
                    (i == 0) ? 0 : 1 + (i - 1 + r) % (slots - 1);
                const std::size_t rhs = 1 + (slots - 2 - i + r) % (slots - 1);
                std::size_t p = std::min(lhs, rhs), q = std::max(lhs, rhs);
                ps[i] = p;
                qs[i] = q;
                if (q >= n) {
                    active[i] = 0;
                    continue;
                }
                const double apq = a(p, q);
                if (apq == 0.0 ||
                    std::fabs(apq) <
                        1e-18 * (std::fabs(a(p, p)) + std::fabs(a(q, q)))) {
                    active[i] = 0;
                    continue;
                }
                active[i] = 1;
                // Angles all come from the round-start matrix; the
                // rotations in one round touch disjoint index pairs,
                // so these entries are not modified by each other.
                const auto [c, s] = rotation_angle(a(p, p), a(q, q), apq);
                cs[i] = c;
                ss[i] = s;
            }
            // Column pass: a <- a J and v <- v J.  Each active pair
            // owns its two columns, so iterations are independent.
#pragma omp parallel for schedule(static)
            for (long long ii = 0; ii < static_cast<long long>(pairs); ++ii) {
                const auto i = static_cast<std::size_t>(ii);
                if (!active[i]) continue;
                const std::size_t p = ps[i], q = qs[i];
                const double c = cs[i], s = ss[i];
                for (std::size_t row = 0; row < n; ++row) {
                    const double arp = a(row, p), arq = a(row, q);
                    a(row, p) = c * arp - s * arq;
                    a(row, q) = s * arp + c * arq;
                    const double vrp = v(row, p), vrq = v(row, q);
                    v(row, p) = c * vrp - s * vrq;
                    v(row, q) = s * vrp + c * vrq;
                }
            }
            // Row pass: a <- J^T a.  Again disjoint rows per pair.
#pragma omp parallel for schedule(static)
            for (long long ii = 0; ii < static_cast<long long>(pairs); ++ii) {
                const auto i = static_cast<std::size_t>(ii);
                if (!active[i]) continue;
                const std::size_t p = ps[i], q = qs[i];
                const double c = cs[i], s = ss[i];
                double* rp = a.row(p);
                double* rq = a.row(q);
                for (std::size_t col = 0; col < n; ++col) {
                    const double apc = rp[col], aqc = rq[col];
                    rp[col] = c * apc - s * aqc;
                    rq[col] = s * apc + c * aqc;
                }
            }
        }
    }
    if (off_diagonal_norm(a) <= stop) return finish(a, v);
    throw std::runtime_error("jacobi: no convergence after 50 sweeps");
}

EigenDecomposition sym_eig(const SymmetricMatrix& a) {
    return jacobi_eigen_parallel(a);
}

}  // namespace sfa
