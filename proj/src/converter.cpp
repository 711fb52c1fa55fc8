#include "converter.hpp"

#include <cmath>
#include <stdexcept>

namespace pwcsim {

void ConverterParams::validate() const {
    if (!(saturation_a > 0.0 && saturation_a <= 1.0)) {
        throw std::domain_error("ConverterParams: saturation must be in (0,1]");
    }
    if (!(eta_per_mw > 0.0)) {
        throw std::domain_error("ConverterParams: pump coupling must be > 0");
    }
    if (noise_tel_cps_per_mw < 0.0 || noise_vis_cps_per_mw2 < 0.0 ||
        noise_vis_cps_per_mw < 0.0 || leak_cps < 0.0 ||
        leak_cps_per_alpha2 < 0.0) {
        throw std::domain_error("ConverterParams: noise coefficients must be >= 0");
    }
}

Efficiency efficiency(const ConverterParams& params, double pump_mw) {
    if (pump_mw < 0.0) {
        throw std::domain_error("efficiency: pump power must be >= 0");
    }
    const double s = std::sin(std::sqrt(params.eta_per_mw * pump_mw));
    const double r = params.saturation_a * s * s;
    return {1.0 - r, r};
}

OpticalState apply_conversion(const OpticalState& state,
                              const ConverterParams& params, double pump_mw) {
    if (pump_mw < 0.0) {
        throw std::domain_error("apply_conversion: pump power must be >= 0");
    }
    const double x = std::sqrt(params.eta_per_mw * pump_mw);
    const double s = std::sin(x);
    const double v = std::sqrt(params.saturation_a) * s;
    const double u = params.saturation_a == 1.0
                         ? std::cos(x)
                         : std::sqrt(1.0 - params.saturation_a * s * s);
    const std::complex<double> phase{std::cos(params.pump_phase_rad),
                                     std::sin(params.pump_phase_rad)};

    OpticalState out = state;
    for (TimeBin bin : {TimeBin::early, TimeBin::late}) {
        const ModeLabel vis{Band::visible, bin};
        const ModeLabel tel{Band::telecom, bin};
        const auto amp_vis = state.amplitude(vis);
        const auto amp_tel = state.amplitude(tel);
        out.set_amplitude(vis, u * amp_vis - phase * v * amp_tel);
        out.set_amplitude(tel, std::conj(phase) * v * amp_vis + u * amp_tel);
    }
    return out;
}

double noise_rate_telecom(const ConverterParams& params, double pump_mw) {
    if (pump_mw < 0.0) {
        throw std::domain_error("noise_rate_telecom: pump power must be >= 0");
    }
    return params.noise_tel_cps_per_mw * pump_mw;
}

double noise_rate_visible(const ConverterParams& params, double pump_mw) {
    if (pump_mw < 0.0) {
        throw std::domain_error("noise_rate_visible: pump power must be >= 0");
    }
    return params.noise_vis_cps_per_mw2 * pump_mw * pump_mw +
           params.noise_vis_cps_per_mw * pump_mw;
}

double noise_rate_signal_leak(const ConverterParams& params, double alpha2) {
    if (alpha2 < 0.0) {
        throw std::domain_error("noise_rate_signal_leak: |alpha|^2 must be >= 0");
    }
    return params.leak_cps + params.leak_cps_per_alpha2 * alpha2;
}

}  // namespace pwcsim
