#include "detection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pwcsim {

std::string to_string(PeakLabel p) {
    switch (p) {
        case PeakLabel::early: return "early";
        case PeakLabel::middle: return "middle";
        case PeakLabel::late: return "late";
        case PeakLabel::background: return "background";
    }
    return "?";
}

std::uint64_t sample_counts(double rate_cps, double duration_s, Rng& rng) {
    if (rate_cps < 0.0) {
        throw std::domain_error("sample_counts: rate must be >= 0");
    }
    if (!(duration_s > 0.0)) {
        throw std::domain_error("sample_counts: duration must be > 0");
    }
    return rng.poisson(rate_cps * duration_s);
}

std::uint64_t Histogram::total() const {
    std::uint64_t sum = 0;
    for (auto b : bins) sum += b;
    return sum;
}

Histogram histogram(const std::vector<CountRecord>& records,
                    double bin_width_s, double period_s, double delay_s,
                    Rng& rng) {
    if (!(bin_width_s > 0.0)) {
        throw std::domain_error("histogram: bin width must be > 0");
    }
    if (!(period_s > 0.0) || !(delay_s > 0.0) || 2.0 * delay_s >= period_s) {
        throw std::domain_error("histogram: requires 0 < 2*delay < period");
    }
    const std::size_t n_bins =
        static_cast<std::size_t>(std::ceil(period_s / bin_width_s));
    Histogram hist{bin_width_s, period_s, delay_s,
                   std::vector<std::uint64_t>(n_bins, 0)};

    auto bin_of = [&](double t) {
        auto i = static_cast<std::size_t>(t / bin_width_s);
        return std::min(i, n_bins - 1);
    };

    for (const auto& rec : records) {
        switch (rec.peak) {
            case PeakLabel::early:
                hist.bins[bin_of(0.0)] += rec.counts;
                break;
            case PeakLabel::middle:
                hist.bins[bin_of(delay_s)] += rec.counts;
                break;
            case PeakLabel::late:
                hist.bins[bin_of(2.0 * delay_s)] += rec.counts;
                break;
            case PeakLabel::background:
                // Uniform arrival times over the period.
                for (std::uint64_t i = 0; i < rec.counts; ++i) {
                    hist.bins[bin_of(rng.uniform() * period_s)] += 1;
                }
                break;
        }
    }
    return hist;
}

std::uint64_t postselect_middle(const Histogram& hist, double window_s) {
    if (!(window_s > 0.0)) {
        throw std::domain_error("postselect_middle: window must be > 0");
    }
    if (window_s > hist.delay_s) {
        throw std::domain_error("postselect_middle: window exceeds peak spacing");
    }
    const double lo = hist.delay_s - window_s / 2.0;
    const double hi = hist.delay_s + window_s / 2.0;
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < hist.bins.size(); ++i) {
        const double c = hist.bin_center(i);
        if (c >= lo && c < hi) {
            sum += hist.bins[i];
        }
    }
    return sum;
}

VisibilityEstimate estimate_visibility(
    const std::vector<std::pair<double, std::uint64_t>>& scan_counts) {
    if (scan_counts.size() < 2) {
        throw std::invalid_argument("estimate_visibility: need >= 2 scan points");
    }
    std::uint64_t n_max = scan_counts.front().second;
    std::uint64_t n_min = n_max;
    for (const auto& [delta, counts] : scan_counts) {
        n_max = std::max(n_max, counts);
        n_min = std::min(n_min, counts);
    }
    const double total = static_cast<double>(n_max) + static_cast<double>(n_min);
    if (total == 0.0) {
        throw std::domain_error("estimate_visibility: undefined for zero counts");
    }
    VisibilityEstimate est;
    est.n_max = n_max;
    est.n_min = n_min;
    est.v = (static_cast<double>(n_max) - static_cast<double>(n_min)) / total;
    est.sigma = 2.0 * std::sqrt(static_cast<double>(n_max) *
                                static_cast<double>(n_min) /
                                (total * total * total));
    return est;
}

FringeFit fit_fringe(const std::vector<std::pair<double, std::uint64_t>>& scan_counts) {
    if (scan_counts.size() < 3) {
        throw std::invalid_argument("fit_fringe: need >= 3 scan points");
    }
    // Normal equations for y = a + p cos(delta) + q sin(delta).
    double s11 = 0, s1c = 0, s1s = 0, scc = 0, scs = 0, sss = 0;
    double sy = 0, syc = 0, sys = 0;
    for (const auto& [delta, counts] : scan_counts) {
        const double c = std::cos(delta);
        const double s = std::sin(delta);
        const double y = static_cast<double>(counts);
        s11 += 1.0;
        s1c += c;
        s1s += s;
        scc += c * c;
        scs += c * s;
        sss += s * s;
        sy += y;
        syc += y * c;
        sys += y * s;
    }
    // Solve the 3x3 symmetric system by Cramer's rule.
    const double a11 = s11, a12 = s1c, a13 = s1s;
    const double a22 = scc, a23 = scs, a33 = sss;
    const double det = a11 * (a22 * a33 - a23 * a23) -
                       a12 * (a12 * a33 - a23 * a13) +
                       a13 * (a12 * a23 - a22 * a13);
    if (std::abs(det) < 1e-12) {
        throw std::domain_error("fit_fringe: degenerate phase grid");
    }
    const double d1 = sy * (a22 * a33 - a23 * a23) -
                      a12 * (syc * a33 - a23 * sys) +
                      a13 * (syc * a23 - a22 * sys);
    const double d2 = a11 * (syc * a33 - sys * a23) -
                      sy * (a12 * a33 - a23 * a13) +
                      a13 * (a12 * sys - syc * a13);
    const double d3 = a11 * (a22 * sys - syc * a23) -
                      a12 * (a12 * sys - syc * a13) +
                      sy * (a12 * a23 - a22 * a13);
    FringeFit fit;
    fit.offset = d1 / det;
    const double p = d2 / det;
    const double q = d3 / det;
    fit.amplitude = std::hypot(p, q);
    fit.phase_rad = std::atan2(q, p);
    fit.visibility = fit.offset > 0.0 ? fit.amplitude / fit.offset : 0.0;
    return fit;
}

}  // namespace pwcsim
