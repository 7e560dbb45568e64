#include "sfa/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "sfa/tolerances.hpp"

namespace sfa {
namespace {

double mean_of(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

}  // namespace

Alignment align(const std::vector<double>& force, const std::vector<double>& y) {
    if (force.size() != y.size())
        throw std::invalid_argument("align: length mismatch");
    const std::size_t n = force.size();
    if (n < 2) throw std::invalid_argument("align: need at least 2 samples");

    const double mf = mean_of(force);
    const double my = mean_of(y);
    double var_f = 0.0, var_y = 0.0, cov = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double df = force[i] - mf;
        const double dy = y[i] - my;
        var_f += df * df;
        var_y += dy * dy;
        cov += df * dy;
    }
    var_f /= static_cast<double>(n);
    var_y /= static_cast<double>(n);
    cov /= static_cast<double>(n);
    if (var_f <= 0.0) throw std::runtime_error("align: zero-variance force");

    Alignment out;
    out.a = cov / var_f;
    out.b = my - out.a * mf;
    out.corr = var_y > 0.0 ? cov / std::sqrt(var_f * var_y) : 0.0;
    out.aligned.resize(n);
    double sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out.aligned[i] = out.a * force[i] + out.b;
        const double d = out.aligned[i] - y[i];
        sq += d * d;
    }
    out.mse = sq / static_cast<double>(n);
    return out;
}

double slowness_eta(const std::vector<double>& y) {
    const std::size_t n = y.size();
    if (n < 2) throw std::invalid_argument("slowness_eta: need at least 2 samples");
    const double m = mean_of(y);
    double var = 0.0;
    for (double v : y) var += (v - m) * (v - m);
    var /= static_cast<double>(n);
    if (var <= 0.0) throw std::runtime_error("slowness_eta: zero variance");
    double dsq = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d = y[i + 1] - y[i];
        dsq += d * d;
    }
    dsq /= static_cast<double>(n - 1);
    return static_cast<double>(n) / (2.0 * std::numbers::pi_v<double>) *
           std::sqrt(dsq / var);
}

SlownessReport constraint_report(const Matrix& y,
                                 const std::vector<double>* force) {
    const std::size_t n = y.rows(), k = y.cols();
    if (k < 1) throw std::invalid_argument("constraint_report: no components");
    if (n < 2) throw std::invalid_argument("constraint_report: need at least 2 samples");

    SlownessReport rep;
    rep.mean.resize(k);
    rep.variance.resize(k);
    rep.eta.resize(k);
    rep.decorrelation = Matrix(k, k, 0.0);

    for (std::size_t j = 0; j < k; ++j) {
        double acc = 0.0;
        for (std::size_t t = 0; t < n; ++t) acc += y(t, j);
        rep.mean[j] = acc / static_cast<double>(n);
    }
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t l = j; l < k; ++l)
                rep.decorrelation(j, l) += y(t, j) * y(t, l);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t l = j; l < k; ++l) {
            rep.decorrelation(j, l) /= static_cast<double>(n);
            rep.decorrelation(l, j) = rep.decorrelation(j, l);
        }

    for (std::size_t j = 0; j < k; ++j) {
        rep.variance[j] = rep.decorrelation(j, j) - rep.mean[j] * rep.mean[j];
        // eta on the mean-removed component; a flat component is
        // infinitely slow unless its derivative is somehow nonzero.
        double dsq = 0.0;
        for (std::size_t t = 0; t + 1 < n; ++t) {
            const double d = y(t + 1, j) - y(t, j);
            dsq += d * d;
        }
        dsq /= static_cast<double>(n - 1);
        if (rep.variance[j] > 0.0)
            rep.eta[j] = static_cast<double>(n) /
                         (2.0 * std::numbers::pi_v<double>) *
                         std::sqrt(dsq / rep.variance[j]);
        else
            rep.eta[j] = dsq > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;

        if (std::fabs(rep.mean[j]) > tol::kMeanViolation) rep.mean_violation = true;
        if (std::fabs(rep.decorrelation(j, j) - 1.0) > tol::kVarianceViolation)
            rep.variance_violation = true;
    }

    if (force != nullptr) {
        rep.eta_reference = slowness_eta(*force);
        rep.not_slow = rep.eta[0] > tol::kNotSlowFactor * rep.eta_reference;
    } else {
        rep.eta_reference = std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
}

}  // namespace sfa
