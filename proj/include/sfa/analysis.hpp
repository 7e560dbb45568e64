#pragma once

#include <cstddef>
#include <vector>

#include "sfa/matrix.hpp"

namespace sfa {

// Least-squares fit of a*force + b onto y, solved in closed form.
struct Alignment {
    double a = 0.0;
    double b = 0.0;
    double mse = 0.0;   // mean squared error of aligned vs y
    double corr = 0.0;  // Pearson correlation of force and y
    std::vector<double> aligned;
};

// a = Cov(force, y) / Var(force), b = <y> - a <force>; this is the
// global minimizer of <(a*force + b - y)^2>.  The force must have
// nonzero variance.
Alignment align(const std::vector<double>& force, const std::vector<double>& y);

// Slowness index eta(y) = (T / 2*pi) * sqrt(<dy^2> / <y^2>) with y
// mean-removed and dy the first differences.  Scale and sign
// invariant; small values mean slow signals.  Needs nonzero variance.
double slowness_eta(const std::vector<double>& y);

// Constraint diagnostics for a block of output components (rows are
// samples, column j is y_{j+1}).  Violations are reported, never
// thrown: a violated constraint is the interesting result.
struct SlownessReport {
    std::vector<double> mean;      // <y_j>
    std::vector<double> variance;  // <y_j^2> - <y_j>^2
    std::vector<double> eta;       // slowness per component
    Matrix decorrelation;          // raw second moments <y_j y_k>
    bool mean_violation = false;      // some |<y_j>| > 1e-6
    bool variance_violation = false;  // some |<y_j^2> - 1| > 1e-3
    bool not_slow = false;            // eta(y_1) > 3x eta of the force
    double eta_reference = 0.0;       // eta of the force; NaN if absent
};

SlownessReport constraint_report(const Matrix& y,
                                 const std::vector<double>* force = nullptr);

}  // namespace sfa
