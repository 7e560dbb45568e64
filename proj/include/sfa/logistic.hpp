#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace sfa {

// Slowly driven logistic map:
//   w(t+1) = (4.0 - q + 0.1 * sin(0.0125 t)) * w(t) * (1 - w(t))
// The transient runs for burn_in steps before sample 0, and the drive
// phase is counted so that t = 0 lands on the first retained sample.
struct LogisticConfig {
    double q = 1.2;               // in [0.1, 3.9]
    std::size_t length = 6000;    // retained samples
    std::size_t burn_in = 1000;   // discarded leading iterations
    double w0 = 0.6;              // initial value, in (0, 1)
    double noise_sigma = 0.0;     // std of additive Gaussian noise
    std::uint64_t seed = 42;      // noise generator seed
};

// The driving force sin(0.0125 t).
double driving_force(double t);

// Standard-normal draws via the Box-Muller transform over
// std::mt19937_64.  Both pieces are pinned down by the C++ standard,
// so a seed reproduces the same stream on any conforming platform.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}
    double next();

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

// splitmix64-style mixing of a base seed with up to three coordinates;
// used to give every sweep cell an independent noise stream.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a = 0,
                          std::uint64_t b = 0, std::uint64_t c = 0);

// Iterates the map and returns the retained samples.  Noise (if any)
// is added to the retained samples after generation; it is never fed
// back into the recursion.  Without noise every sample is verified to
// stay inside (0, 1); escaping means bad parameters and throws.
std::vector<double> logistic_series(const LogisticConfig& cfg);

// Same with a custom drive (test hook; `force` replaces sin(0.0125 t)).
std::vector<double> logistic_series(const LogisticConfig& cfg,
                                    double (*force)(double));

}  // namespace sfa
