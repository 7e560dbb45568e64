#include "sfa/logistic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sfa {

double driving_force(double t) { return std::sin(0.0125 * t); }

double GaussianSampler::next() {
    if (have_cached_) {
        have_cached_ = false;
        return cached_;
    }
    // 53-bit uniforms; the +1 keeps u1 strictly positive for the log.
    const double u1 = ((engine_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = (engine_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi_v<double> * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) {
    auto mix = [](std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    };
    std::uint64_t h = mix(base);
    h = mix(h ^ mix(a));
    h = mix(h ^ mix(b));
    h = mix(h ^ mix(c));
    return h;
}

std::vector<double> logistic_series(const LogisticConfig& cfg,
                                    double (*force)(double)) {
    if (!(cfg.q >= 0.1 && cfg.q <= 3.9))
        throw std::invalid_argument("logistic_series: q must lie in [0.1, 3.9]");
    if (!(cfg.w0 > 0.0 && cfg.w0 < 1.0))
        throw std::invalid_argument("logistic_series: w0 must lie in (0, 1)");
    if (cfg.length == 0)
        throw std::invalid_argument("logistic_series: length must be positive");
    if (!(cfg.noise_sigma >= 0.0))
        throw std::invalid_argument("logistic_series: noise sigma must be >= 0");

    std::vector<double> out(cfg.length);
    double w = cfg.w0;
    const long long start = -static_cast<long long>(cfg.burn_in);
    const long long last = static_cast<long long>(cfg.length) - 1;
    for (long long t = start; t <= last; ++t) {
        if (t >= 0) out[static_cast<std::size_t>(t)] = w;
        if (t == last) break;
        const double factor = 4.0 - cfg.q + 0.1 * force(static_cast<double>(t));
        w = factor * w * (1.0 - w);
        if (!(w > 0.0 && w < 1.0))
            throw std::runtime_error(
                "logistic_series: map left (0,1) at step " + std::to_string(t + 1));
    }

    if (cfg.noise_sigma > 0.0) {
        GaussianSampler gauss(cfg.seed);
        for (double& v : out) v += cfg.noise_sigma * gauss.next();
    }
    return out;
}

std::vector<double> logistic_series(const LogisticConfig& cfg) {
    return logistic_series(cfg, &driving_force);
}

}  // namespace sfa
