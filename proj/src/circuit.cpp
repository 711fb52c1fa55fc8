#include "circuit.hpp"

#include <cmath>
#include <stdexcept>

namespace pwcsim {

void CircuitConfig::validate() const {
    if (alpha2 < 0.0) {
        throw std::domain_error("CircuitConfig: alpha2 must be >= 0");
    }
    for (double t : {t_in, t_vis, t_tel}) {
        if (!(t >= 0.0 && t <= 1.0)) {
            throw std::domain_error("CircuitConfig: transmittances must be in [0,1]");
        }
    }
    if (!(f_clock_hz > 0.0) || !(f_rep_hz > 0.0)) {
        throw std::domain_error("CircuitConfig: clock frequencies must be > 0");
    }
    if (!(window_s > 0.0 && window_s < delay_s && delay_s < 1.0 / f_rep_hz)) {
        throw std::domain_error(
            "CircuitConfig: requires window < delay < repetition period");
    }
    if (pump_mw < 0.0) {
        throw std::domain_error("CircuitConfig: pump power must be >= 0");
    }
    if (!(intrinsic_visibility >= 0.0 && intrinsic_visibility <= 1.0)) {
        throw std::domain_error("CircuitConfig: intrinsic visibility must be in [0,1]");
    }
    if (dark_rate_cps < 0.0) {
        throw std::domain_error("CircuitConfig: dark rate must be >= 0");
    }
    if (!(duration_s > 0.0)) {
        throw std::domain_error("CircuitConfig: duration must be > 0");
    }
}

OpticalState build_input(double alpha2, double delta) {
    if (alpha2 < 0.0) {
        throw std::domain_error("build_input: alpha2 must be >= 0");
    }
    const double amp = std::sqrt(alpha2);
    OpticalState state;
    state.set_amplitude({Band::visible, TimeBin::early}, amp);
    state.set_amplitude({Band::visible, TimeBin::late},
                        amp * std::complex<double>{std::cos(delta), std::sin(delta)});
    return state;
}

namespace {

// Folded bookkeeping of the balanced second interferometer followed by the
// +45 degree projection: each side peak keeps half of a bin's photons; the
// middle peak interferes the two bins with the (1 + cos)/2 law.
BandRates band_rates(const OpticalState& state, Band band,
                     const CircuitConfig& config, double t_band,
                     double background_cps) {
    const auto amp_early = state.amplitude({band, TimeBin::early});
    auto amp_late = state.amplitude({band, TimeBin::late});
    if (config.fringe_offset_rad != 0.0) {
        const double d0 = config.fringe_offset_rad;
        amp_late *= std::complex<double>{std::cos(-d0), std::sin(-d0)};
    }
    const double n_early = std::norm(amp_early);
    const double n_late = std::norm(amp_late);
    const double cross = 2.0 * config.intrinsic_visibility *
                         (std::conj(amp_early) * amp_late).real();

    BandRates rates;
    const double f = config.f_clock_hz;
    rates.early_cps = f * t_band * n_early / 2.0;
    rates.late_cps = f * t_band * n_late / 2.0;
    rates.middle_cps = f * t_band * (n_early + n_late + cross) / 4.0;
    rates.background_cps = background_cps;
    return rates;
}

}  // namespace

PeakRates propagate(const CircuitConfig& config, const ConverterParams& params) {
    config.validate();
    params.validate();

    OpticalState state = build_input(config.alpha2, config.scan_phase_rad);
    state = apply_loss(state, {Band::visible, TimeBin::early}, config.t_in);
    state = apply_loss(state, {Band::visible, TimeBin::late}, config.t_in);
    state = apply_conversion(state, params, config.pump_mw);

    const double leak = noise_rate_signal_leak(params, config.alpha2);
    const double bg_vis = noise_rate_visible(params, config.pump_mw) + leak +
                          config.dark_rate_cps;
    const double bg_tel = noise_rate_telecom(params, config.pump_mw) + leak +
                          config.dark_rate_cps;

    PeakRates rates;
    rates.visible = band_rates(state, Band::visible, config, config.t_vis, bg_vis);
    rates.telecom = band_rates(state, Band::telecom, config, config.t_tel, bg_tel);
    return rates;
}

std::vector<std::pair<double, PeakRates>> fringe_scan(
    const CircuitConfig& config, const ConverterParams& params,
    const std::vector<double>& deltas) {
    if (deltas.empty()) {
        throw std::invalid_argument("fringe_scan: empty phase list");
    }
    std::vector<std::pair<double, PeakRates>> out;
    out.reserve(deltas.size());
    for (double delta : deltas) {
        CircuitConfig point = config;
        point.scan_phase_rad = delta;
        out.emplace_back(delta, propagate(point, params));
    }
    return out;
}

std::vector<ConversionPoint> conversion_curve(const CircuitConfig& config,
                                              const ConverterParams& params,
                                              const std::vector<double>& pumps) {
    config.validate();
    params.validate();
    std::vector<ConversionPoint> out;
    out.reserve(pumps.size());
    const double input_rate = config.f_clock_hz * config.alpha2 * config.t_in;
    for (double pump : pumps) {
        const auto [t, r] = efficiency(params, pump);
        out.push_back({pump, input_rate * t * config.t_vis,
                       input_rate * r * config.t_tel});
    }
    return out;
}

}  // namespace pwcsim
