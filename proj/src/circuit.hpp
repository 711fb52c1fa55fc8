#pragma once

#include <utility>
#include <vector>

#include "converter.hpp"
#include "mode_state.hpp"

namespace pwcsim {

// End-to-end model of the two-interferometer apparatus: time-bin splitting,
// partial wavelength conversion, recombination and projection onto the
// interfering output.  The second interferometer is treated as balanced with
// its splitting loss folded into the per-band transmittances, so the middle
// arrival peak of each band follows the (1 + cos delta)/2 law and the side
// peaks are phase-independent.
struct CircuitConfig {
    double alpha2 = 0.1;          // mean photon number per input time bin
    double t_in = 0.5;            // transmittance before the converter
    double t_vis = 0.06;          // after converter, visible (incl. detector)
    double t_tel = 0.09;          // after converter, telecom (incl. detector)
    double f_clock_hz = 1e6;      // TDC gate clock
    double f_rep_hz = 82e6;       // source repetition rate
    double delay_s = 600e-12;     // interferometer path delay
    double window_s = 200e-12;    // post-selection window
    double pump_mw = 165.0;
    double scan_phase_rad = 0.0;  // piezo scan phase (delta)
    double fringe_offset_rad = 0.0;   // interferometer bias (delta_0)
    double intrinsic_visibility = 1.0;  // mode-overlap imperfection factor
    double dark_rate_cps = 0.0;   // detector dark counts per window
    double duration_s = 1.0;      // accumulation time per measurement point

    void validate() const;  // throws std::domain_error on violation
};

// Expected counts/s per detector and arrival peak, plus the in-window
// background rate of each detector.
struct BandRates {
    double early_cps = 0.0;
    double middle_cps = 0.0;
    double late_cps = 0.0;
    double background_cps = 0.0;  // per post-selection window
};

struct PeakRates {
    BandRates visible;
    BandRates telecom;

    const BandRates& band(Band b) const {
        return b == Band::visible ? visible : telecom;
    }
};

// Two visible-band time bins of amplitude sqrt(alpha2) each, with the scan
// phase delta on the late bin.  Telecom bins start in vacuum.
OpticalState build_input(double alpha2, double delta);

// Full propagation at the configured pump power and scan phase.
PeakRates propagate(const CircuitConfig& config, const ConverterParams& params);

std::vector<std::pair<double, PeakRates>> fringe_scan(
    const CircuitConfig& config, const ConverterParams& params,
    const std::vector<double>& deltas);

struct ConversionPoint {
    double pump_mw;
    double visible_cps;  // total unconverted signal rate
    double telecom_cps;  // total converted signal rate
};

// Phase-independent signal rates versus pump power:
//   visible = f alpha2 T_in T(P) T_V,  telecom = f alpha2 T_in R(P) T_T.
std::vector<ConversionPoint> conversion_curve(const CircuitConfig& config,
                                              const ConverterParams& params,
                                              const std::vector<double>& pumps);

}  // namespace pwcsim
