#pragma once

#include "mode_state.hpp"

namespace pwcsim {

// Pump-power-dependent frequency-domain beamsplitter between the visible and
// telecom bands of the same time bin, plus the pump-induced noise models.
//
// The conversion efficiency follows R(P) = A sin^2(sqrt(eta P)); the
// unconverted probability is T(P) = 1 - R(P).  Saturation A < 1 is modeled
// as a norm-preserving re-split, not as loss, so T + R = 1 holds exactly and
// count bookkeeping stays closed.
struct ConverterParams {
    double saturation_a = 0.94;        // dimensionless, in (0,1]
    double eta_per_mw = 0.0044;        // pump coupling, 1/mW
    double pump_phase_rad = 0.0;

    // Noise-rate coefficients.  All rates are counts/s referred to a single
    // post-selection window.
    double noise_tel_cps_per_mw = 0.0;    // telecom band, linear in P
    double noise_vis_cps_per_mw2 = 0.0;   // visible band, quadratic term
    double noise_vis_cps_per_mw = 0.0;    // visible band, linear term
    double leak_cps = 0.0;                // signal-independent leak floor
    double leak_cps_per_alpha2 = 0.0;     // leak growth with |alpha|^2

    void validate() const;  // throws std::domain_error on violation
};

struct Efficiency {
    double transmitted;  // T(P)
    double reflected;    // R(P)
};

// T/R split at pump power P (mW).  Throws std::domain_error for P < 0.
Efficiency efficiency(const ConverterParams& params, double pump_mw);

// Applies the two-mode conversion transform between (visible, telecom) of
// each time bin independently.  The amplitude matrix, acting on
// (visible, telecom), is
//   [  u                 -e^{+i phi} v ]
//   [  e^{-i phi} v       u            ]
// with v = sqrt(A) sin(x), x = sqrt(eta P), and u = sqrt(1 - A sin^2 x).
// For A = 1 the unconverted coefficient is cos(x) with its sign, which is
// the exact beamsplitter relation of an ideal converter.  For A < 1,
// 1 - A sin^2 x >= 1 - A > 0, so the positive branch of the square root is
// smooth in P.
OpticalState apply_conversion(const OpticalState& state,
                              const ConverterParams& params, double pump_mw);

// Raman noise of the pump at the telecom band: linear in P.
double noise_rate_telecom(const ConverterParams& params, double pump_mw);

// Up-converted Raman noise at the visible band: quadratic plus linear in P.
double noise_rate_visible(const ConverterParams& params, double pump_mw);

// Background from the continuously converted residual cw component of the
// source: constant floor plus a term linear in |alpha|^2.
double noise_rate_signal_leak(const ConverterParams& params, double alpha2);

}  // namespace pwcsim
