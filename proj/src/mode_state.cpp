#include "mode_state.hpp"

#include <cmath>
#include <stdexcept>

namespace pwcsim {

std::string to_string(Band b) {
    return b == Band::visible ? "visible" : "telecom";
}

std::string to_string(const ModeLabel& m) {
    return to_string(m.band) + (m.bin == TimeBin::early ? ":early" : ":late");
}

OpticalState::Amplitude OpticalState::amplitude(const ModeLabel& m) const {
    auto it = amps_.find(m);
    return it == amps_.end() ? Amplitude{0.0, 0.0} : it->second;
}

void OpticalState::set_amplitude(const ModeLabel& m, Amplitude a) {
    if (a == Amplitude{0.0, 0.0}) {
        amps_.erase(m);
    } else {
        amps_[m] = a;
    }
}

double OpticalState::total_mean_photon_number() const {
    double total = 0.0;
    for (const auto& [label, amp] : amps_) {
        total += std::norm(amp);
    }
    return total;
}

OpticalState apply_beamsplitter(const OpticalState& state, const ModeLabel& a,
                                const ModeLabel& b, double r, double phi) {
    if (a == b) {
        throw std::invalid_argument("apply_beamsplitter: modes must differ");
    }
    if (!(r >= 0.0 && r <= 1.0)) {
        throw std::domain_error("apply_beamsplitter: reflectance outside [0,1]");
    }
    const double sr = std::sqrt(r);
    const double st = std::sqrt(1.0 - r);
    const std::complex<double> phase{std::cos(phi), std::sin(phi)};

    const auto amp_a = state.amplitude(a);
    const auto amp_b = state.amplitude(b);

    OpticalState out = state;
    out.set_amplitude(a, st * amp_a - phase * sr * amp_b);
    out.set_amplitude(b, std::conj(phase) * sr * amp_a + st * amp_b);
    return out;
}

OpticalState apply_phase(const OpticalState& state, const ModeLabel& m,
                         double delta) {
    const std::complex<double> phase{std::cos(delta), std::sin(delta)};
    OpticalState out = state;
    out.set_amplitude(m, phase * state.amplitude(m));
    return out;
}

OpticalState apply_loss(const OpticalState& state, const ModeLabel& m,
                        double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::domain_error("apply_loss: transmittance outside [0,1]");
    }
    OpticalState out = state;
    out.set_amplitude(m, std::sqrt(t) * state.amplitude(m));
    return out;
}

double mean_photon_number(const OpticalState& state, const ModeLabel& m) {
    return std::norm(state.amplitude(m));
}

}  // namespace pwcsim
