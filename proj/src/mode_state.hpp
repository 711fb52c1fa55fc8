#pragma once

#include <complex>
#include <compare>
#include <functional>
#include <map>
#include <string>

namespace pwcsim {

// The simulation tracks four optical modes: two wavelength bands times two
// time bins.  The pump never appears as a mode; it enters the converter as
// classical parameters (power, phase).

enum class Band { visible, telecom };      // nominal 780 nm / 1522 nm
enum class TimeBin { early, late };

struct ModeLabel {
    Band band;
    TimeBin bin;

    auto operator<=>(const ModeLabel&) const = default;
};

std::string to_string(Band b);
std::string to_string(const ModeLabel& m);

}  // namespace pwcsim

template <>
struct std::hash<pwcsim::ModeLabel> {
    std::size_t operator()(const pwcsim::ModeLabel& m) const noexcept {
        return (static_cast<std::size_t>(m.band) << 1) |
               static_cast<std::size_t>(m.bin);
    }
};

namespace pwcsim {

// Multimode coherent light as a sparse map of complex amplitudes.  A label
// absent from the map is vacuum.  Mean photon number of a mode is the
// squared magnitude of its amplitude.  All operations below are pure: they
// return a new state and never mutate their input.
class OpticalState {
  public:
    using Amplitude = std::complex<double>;

    OpticalState() = default;

    Amplitude amplitude(const ModeLabel& m) const;
    void set_amplitude(const ModeLabel& m, Amplitude a);

    // Sum of |amp|^2 over all stored modes.
    double total_mean_photon_number() const;

    const std::map<ModeLabel, Amplitude>& amplitudes() const { return amps_; }

  private:
    std::map<ModeLabel, Amplitude> amps_;
};

// Two-mode beamsplitter acting on modes a and b with reflectance r in [0,1]
// and pump-phase convention
//   amp_b' = e^{-i phi} sqrt(r) amp_a + sqrt(1-r) amp_b
//   amp_a' = sqrt(1-r) amp_a - e^{+i phi} sqrt(r) amp_b
// Throws std::invalid_argument for a == b and std::domain_error for r
// outside [0,1].
OpticalState apply_beamsplitter(const OpticalState& state, const ModeLabel& a,
                                const ModeLabel& b, double r, double phi);

// amp_m' = e^{i delta} amp_m
OpticalState apply_phase(const OpticalState& state, const ModeLabel& m,
                         double delta);

// amp_m' = sqrt(t) amp_m; coherent states stay coherent under loss.
// Throws std::domain_error for t outside [0,1].
OpticalState apply_loss(const OpticalState& state, const ModeLabel& m,
                        double t);

double mean_photon_number(const OpticalState& state, const ModeLabel& m);

}  // namespace pwcsim
