#include "analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "errors.hpp"

namespace pwcsim {

double FitResult::value(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return values[i];
    }
    throw std::invalid_argument("FitResult: unknown parameter " + name);
}

double FitResult::sigma(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return sigmas[i];
    }
    throw std::invalid_argument("FitResult: unknown parameter " + name);
}

double conversion_model(double pump_mw, double a, double eta) {
    const double s = std::sin(std::sqrt(eta * pump_mw));
    return 1.0 - a * s * s;
}

std::pair<double, double> conversion_model_jacobian(double pump_mw, double a,
                                                    double eta) {
    const double x = std::sqrt(eta * pump_mw);
    const double s = std::sin(x);
    const double d_a = -s * s;
    // sin(2x) P / (2x) -> P as x -> 0.
    const double d_eta = x > 1e-12 ? -a * std::sin(2.0 * x) * pump_mw / (2.0 * x)
                                   : -a * pump_mw;
    return {d_a, d_eta};
}

FitResult fit_conversion_curve(
    const std::vector<std::pair<double, double>>& points,
    const std::vector<double>& weights) {
    if (points.size() < 3) {
        throw FitError("fit_conversion_curve: need at least 3 points");
    }
    bool any_positive_pump = false;
    for (const auto& [p, t] : points) {
        if (p < 0.0) throw std::domain_error("fit_conversion_curve: negative pump power");
        if (p > 0.0) any_positive_pump = true;
    }
    if (!any_positive_pump) {
        throw FitError("fit_conversion_curve: degenerate data, all pump powers zero");
    }
    if (!weights.empty() && weights.size() != points.size()) {
        throw std::invalid_argument("fit_conversion_curve: weight count mismatch");
    }

    std::vector<double> w(points.size(), 1.0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        w[i] = weights.empty() ? 1.0 / std::max(points[i].second, 0.05)
                               : weights[i];
    }

    // Initialization from the data shape.
    double t_min = points.front().second;
    for (const auto& [p, t] : points) t_min = std::min(t_min, t);
    double a = std::clamp(1.0 - t_min, 0.05, 1.0);
    double eta = 0.0;
    const double knee = 1.0 - a / 2.0;
    for (const auto& [p, t] : points) {
        if (p > 0.0 && t < knee) {
            // A sin^2(sqrt(eta P)) = A/2 at sqrt(eta P) = pi/4.
            eta = std::pow(std::numbers::pi / 4.0, 2) / p;
            break;
        }
    }
    if (eta == 0.0) {
        double p_max = 0.0;
        for (const auto& [p, t] : points) p_max = std::max(p_max, p);
        eta = std::pow(std::numbers::pi / 4.0, 2) / p_max;
    }

    auto rss_at = [&](double aa, double ee) {
        double rss = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double r = points[i].second -
                             conversion_model(points[i].first, aa, ee);
            rss += w[i] * r * r;
        }
        return rss;
    };

    double rss = rss_at(a, eta);
    double lambda = 1e-3;
    bool converged = false;
    int iter = 0;
    for (; iter < 100; ++iter) {
        // Normal equations J^T W J and gradient J^T W r.
        double h00 = 0, h01 = 0, h11 = 0, g0 = 0, g1 = 0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const auto [da, de] = conversion_model_jacobian(points[i].first, a, eta);
            const double r = points[i].second -
                             conversion_model(points[i].first, a, eta);
            h00 += w[i] * da * da;
            h01 += w[i] * da * de;
            h11 += w[i] * de * de;
            g0 += w[i] * da * r;
            g1 += w[i] * de * r;
        }

        double step_a = 0.0, step_eta = 0.0;
        bool accepted = false;
        for (int attempt = 0; attempt < 40; ++attempt) {
            const double d00 = h00 * (1.0 + lambda);
            const double d11 = h11 * (1.0 + lambda);
            const double det = d00 * d11 - h01 * h01;
            if (det <= 0.0 || !std::isfinite(det)) {
                lambda *= 10.0;
                continue;
            }
            step_a = (d11 * g0 - h01 * g1) / det;
            step_eta = (-h01 * g0 + d00 * g1) / det;
            const double a_next = a + step_a;
            const double eta_next = eta + step_eta;
            if (!(a_next > 0.0) || !(eta_next > 0.0)) {
                lambda *= 10.0;
                continue;
            }
            const double rss_next = rss_at(a_next, eta_next);
            if (rss_next <= rss) {
                a = a_next;
                eta = eta_next;
                rss = rss_next;
                lambda = std::max(lambda / 10.0, 1e-12);
                accepted = true;
                break;
            }
            lambda *= 10.0;
        }
        if (!accepted) {
            // No damping value produced a decrease: the gradient has
            // effectively vanished, so treat the current point as final.
            converged = std::hypot(g0, g1) < 1e-8;
            break;
        }
        const double rel = std::abs(step_a) / std::max(a, 1e-30) +
                           std::abs(step_eta) / std::max(eta, 1e-30);
        if (rel < 1e-10) {
            converged = true;
            break;
        }
    }

    // Sanity bound of the contract: a saturation fit drifting past 1.05 is
    // not a usable conversion curve.
    if (a > 1.05) {
        converged = false;
    }

    // Covariance from (J^T W J)^-1 scaled by the reduced chi-square.
    double h00 = 0, h01 = 0, h11 = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto [da, de] = conversion_model_jacobian(points[i].first, a, eta);
        h00 += w[i] * da * da;
        h01 += w[i] * da * de;
        h11 += w[i] * de * de;
    }
    const double det = h00 * h11 - h01 * h01;
    const double dof = static_cast<double>(points.size()) - 2.0;
    const double scale = dof > 0.0 ? std::max(rss / dof, 0.0) : 0.0;
    FitResult result;
    result.names = {"A", "eta"};
    result.values = {a, eta};
    if (det > 0.0) {
        result.sigmas = {std::sqrt(scale * h11 / det), std::sqrt(scale * h00 / det)};
    } else {
        result.sigmas = {0.0, 0.0};
    }
    result.rss = rss;
    result.converged = converged;
    result.iterations = iter;
    return result;
}

namespace {

// Dense symmetric solve via Gaussian elimination with partial pivoting;
// the systems here are at most (degree+1) + a few constraints.
std::vector<double> solve_dense(std::vector<std::vector<double>> m,
                                std::vector<double> rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row) {
            if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
        }
        if (std::abs(m[pivot][col]) < 1e-300) {
            throw FitError("polynomial fit: singular normal equations");
        }
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col) continue;
            const double f = m[row][col] / m[col][col];
            for (std::size_t k = col; k < n; ++k) m[row][k] -= f * m[col][k];
            rhs[row] -= f * rhs[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
    return x;
}

double poly_eval(const std::vector<double>& coef, double x) {
    double y = 0.0;
    for (std::size_t k = coef.size(); k-- > 0;) y = y * x + coef[k];
    return y;
}

}  // namespace

FitResult fit_noise_polynomial(
    const std::vector<std::pair<double, double>>& points, int degree) {
    if (degree < 0) {
        throw std::invalid_argument("fit_noise_polynomial: negative degree");
    }
    const std::size_t n_coef = static_cast<std::size_t>(degree) + 1;
    if (points.size() < n_coef) {
        throw FitError("fit_noise_polynomial: underdetermined system");
    }

    // Powers per point, reused by the constrained refits.
    std::vector<std::vector<double>> basis(points.size(),
                                           std::vector<double>(n_coef));
    for (std::size_t i = 0; i < points.size(); ++i) {
        double p = 1.0;
        for (std::size_t k = 0; k < n_coef; ++k) {
            basis[i][k] = p;
            p *= points[i].first;
        }
    }

    std::vector<std::size_t> pinned;  // sample indices constrained to zero
    std::vector<double> coef;
    for (int pass = 0; pass <= degree + 1; ++pass) {
        const std::size_t dim = n_coef + pinned.size();
        std::vector<std::vector<double>> m(dim, std::vector<double>(dim, 0.0));
        std::vector<double> rhs(dim, 0.0);
        for (std::size_t i = 0; i < points.size(); ++i) {
            for (std::size_t a = 0; a < n_coef; ++a) {
                for (std::size_t b = 0; b < n_coef; ++b) {
                    m[a][b] += basis[i][a] * basis[i][b];
                }
                rhs[a] += basis[i][a] * points[i].second;
            }
        }
        // Lagrange rows p(x_j) = 0 for pinned samples.
        for (std::size_t j = 0; j < pinned.size(); ++j) {
            for (std::size_t a = 0; a < n_coef; ++a) {
                m[a][n_coef + j] = basis[pinned[j]][a];
                m[n_coef + j][a] = basis[pinned[j]][a];
            }
        }
        auto sol = solve_dense(std::move(m), std::move(rhs));
        coef.assign(sol.begin(), sol.begin() + static_cast<long>(n_coef));

        // Find the worst negative sample, if any.
        double worst = -1e-9;
        std::size_t worst_idx = points.size();
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double y = poly_eval(coef, points[i].first);
            if (y < worst) {
                worst = y;
                worst_idx = i;
            }
        }
        if (worst_idx == points.size()) break;
        pinned.push_back(worst_idx);
    }

    FitResult result;
    double rss = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double r = points[i].second - poly_eval(coef, points[i].first);
        rss += r * r;
    }
    const double dof =
        static_cast<double>(points.size()) - static_cast<double>(n_coef);
    const double scale = dof > 0.0 ? rss / dof : 0.0;
    for (std::size_t k = 0; k < n_coef; ++k) {
        result.names.push_back("c" + std::to_string(k));
        result.values.push_back(coef[k]);
    }
    // Diagonal of (X^T X)^-1 via per-column solves.
    for (std::size_t k = 0; k < n_coef; ++k) {
        std::vector<std::vector<double>> m(n_coef, std::vector<double>(n_coef, 0.0));
        std::vector<double> e(n_coef, 0.0);
        for (std::size_t i = 0; i < points.size(); ++i) {
            for (std::size_t a = 0; a < n_coef; ++a) {
                for (std::size_t b = 0; b < n_coef; ++b) {
                    m[a][b] += basis[i][a] * basis[i][b];
                }
            }
        }
        e[k] = 1.0;
        try {
            auto col = solve_dense(std::move(m), std::move(e));
            result.sigmas.push_back(std::sqrt(std::max(scale * col[k], 0.0)));
        } catch (const FitError&) {
            result.sigmas.push_back(0.0);
        }
    }
    result.rss = rss;
    result.converged = true;
    result.iterations = static_cast<int>(pinned.size()) + 1;
    return result;
}

double predict_visibility(double alpha2, double t_all, double f_clock_hz,
                          double noise_cps) {
    if (alpha2 < 0.0 || t_all < 0.0 || f_clock_hz < 0.0 || noise_cps < 0.0) {
        throw std::domain_error("predict_visibility: arguments must be >= 0");
    }
    const double signal = alpha2 * t_all * f_clock_hz;
    const double denom = signal + 2.0 * noise_cps;
    if (denom == 0.0) {
        throw std::domain_error("predict_visibility: signal and noise both zero");
    }
    return signal / denom;
}

VisibilityEstimate net_visibility(std::uint64_t n_max, std::uint64_t n_min,
                                  double background) {
    if (background < 0.0) {
        throw std::domain_error("net_visibility: background must be >= 0");
    }
    if (static_cast<double>(n_max) + static_cast<double>(n_min) -
            2.0 * background <=
        0.0) {
        throw std::domain_error("net_visibility: nothing remains above background");
    }
    // Clips at zero when the measured background exceeds the minimum counts.
    const double hi = std::max(static_cast<double>(n_max) - background, 0.0);
    const double lo = std::max(static_cast<double>(n_min) - background, 0.0);
    const double total = hi + lo;
    VisibilityEstimate est;
    est.n_max = n_max;
    est.n_min = n_min;
    est.v = (hi - lo) / total;
    // Poisson variance of the raw counts propagated through the subtraction.
    est.sigma = 2.0 *
                std::sqrt((hi * hi * static_cast<double>(n_min) +
                           lo * lo * static_cast<double>(n_max))) /
                (total * total);
    return est;
}

std::vector<RatioPoint> transmittance_ratio(
    const std::vector<std::tuple<double, double, double>>& points, double c0) {
    if (!(c0 > 0.0)) {
        throw std::domain_error("transmittance_ratio: C0 must be > 0");
    }
    std::vector<RatioPoint> out;
    for (const auto& [pump, visible, telecom] : points) {
        const double r = 1.0 - visible / c0;
        if (r < 1e-3) {
            continue;  // R ~ 0 carries no ratio information
        }
        out.push_back({pump, telecom / (c0 * r)});
    }
    return out;
}

}  // namespace pwcsim
