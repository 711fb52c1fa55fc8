#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mode_state.hpp"
#include "rng.hpp"

namespace pwcsim {

enum class PeakLabel { early, middle, late, background };

std::string to_string(PeakLabel p);

// Gated counts of one detector for one arrival peak.  A background record
// holds the counts integrated over the whole gate-relative axis outside the
// peaks, so per-window quantities follow from the window/period ratio.
struct CountRecord {
    Band detector;
    PeakLabel peak;
    double duration_s;
    std::uint64_t counts;
};

// Poisson-sampled gated counts; deterministic for a fixed generator state.
std::uint64_t sample_counts(double rate_cps, double duration_s, Rng& rng);

// TDC-style histogram over one repetition period.  Peaks sit at 0, delay and
// 2*delay; background records are spread uniformly over the axis.
struct Histogram {
    double bin_width_s;
    double period_s;
    double delay_s;
    std::vector<std::uint64_t> bins;

    double bin_center(std::size_t i) const {
        return (static_cast<double>(i) + 0.5) * bin_width_s;
    }
    std::uint64_t total() const;
};

Histogram histogram(const std::vector<CountRecord>& records,
                    double bin_width_s, double period_s, double delay_s,
                    Rng& rng);

// Sum of histogram counts within [delay - w/2, delay + w/2].  Throws
// std::domain_error for a non-positive window or one that reaches the
// neighboring peaks.
std::uint64_t postselect_middle(const Histogram& hist, double window_s);

struct VisibilityEstimate {
    double v = 0.0;
    double sigma = 0.0;  // Poisson-propagated standard deviation
    std::uint64_t n_max = 0;
    std::uint64_t n_min = 0;
};

// Fringe visibility from the extreme counts of a scan,
//   V = (N_max - N_min) / (N_max + N_min),
// with the delta-method error of independent Poisson extremes,
//   sigma = 2 sqrt(N_max N_min / (N_max + N_min)^3).
// Requires at least two scan points; throws std::domain_error when all
// counts are zero (undefined visibility).
VisibilityEstimate estimate_visibility(
    const std::vector<std::pair<double, std::uint64_t>>& scan_counts);

// Alternative estimator: least-squares fit of a + b cos(delta - phase0),
// linear in (a, b cos phase0, b sin phase0).  Unlike the grid extremes it
// does not bias low when the scan grid misses the true extrema.
struct FringeFit {
    double offset = 0.0;     // a
    double amplitude = 0.0;  // b >= 0
    double phase_rad = 0.0;  // phase0
    double visibility = 0.0; // b / a
};

FringeFit fit_fringe(const std::vector<std::pair<double, std::uint64_t>>& scan_counts);

}  // namespace pwcsim
