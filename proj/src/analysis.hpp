#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "detection.hpp"

namespace pwcsim {

struct FitResult {
    std::vector<std::string> names;
    std::vector<double> values;
    std::vector<double> sigmas;   // 1-sigma uncertainties
    double rss = 0.0;             // weighted residual sum of squares
    bool converged = false;
    int iterations = 0;

    double value(const std::string& name) const;
    double sigma(const std::string& name) const;
};

// Weighted nonlinear least squares of the conversion model
//   T(P) = 1 - A sin^2(sqrt(eta P))
// by damped Gauss-Newton with an analytic Jacobian:
//   dT/dA   = -sin^2(x),  dT/deta = -A sin(2x) P / (2x),  x = sqrt(eta P).
// Damping schedule: a Levenberg multiplier lambda starts at 1e-3, divides by
// 10 after an accepted step and multiplies by 10 after a rejected one, so the
// objective decreases monotonically across accepted iterations.  Stops at a
// relative step below 1e-10 or 100 iterations.  Initial values: A from
// 1 - min(T_obs), eta from the first pump power where T drops below
// 1 - A/2.  Empty weights default to inverse Poisson variance (1/T).
//
// Returns parameters "A" and "eta".  Throws FitError on degenerate input;
// non-convergence is reported through the converged flag.
FitResult fit_conversion_curve(
    const std::vector<std::pair<double, double>>& points,
    const std::vector<double>& weights = {});

// Analytic Jacobian row of the conversion model, exposed for verification
// against finite differences.
std::pair<double, double> conversion_model_jacobian(double pump_mw, double a,
                                                    double eta);
double conversion_model(double pump_mw, double a, double eta);

// Linear least-squares polynomial fit of noise rate versus x.  If the
// unconstrained solution goes negative at a sampled x, the most-violated
// points are pinned to zero (equality-constrained refit) until the fitted
// curve is non-negative at every sample.  Parameters are named "c0".."cN".
FitResult fit_noise_polynomial(
    const std::vector<std::pair<double, double>>& points, int degree);

// Noise-limited visibility of the unit-visibility signal model,
//   V = S / (S + 2 d),  S = alpha2 * T_all * f_clock.
double predict_visibility(double alpha2, double t_all, double f_clock_hz,
                          double noise_cps);

// Visibility after subtracting the measured background b from both extremes.
// If b exceeds N_min the subtraction clips at zero counts.  Throws
// std::domain_error when nothing remains above background.
VisibilityEstimate net_visibility(std::uint64_t n_max, std::uint64_t n_min,
                                  double background);

// T_T/T_V from simultaneous counts of both bands:
//   ratio = telecom / (C0 * R),  R = 1 - visible / C0.
// Points with R ~ 0 cannot constrain the ratio and are skipped.
struct RatioPoint {
    double pump_mw;
    double ratio;
};

std::vector<RatioPoint> transmittance_ratio(
    const std::vector<std::tuple<double, double, double>>& points, double c0);

}  // namespace pwcsim
