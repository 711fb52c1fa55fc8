#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "converter.hpp"
#include "rng.hpp"
#include "version.hpp"

using namespace pwcsim;
using Amp = std::complex<double>;

namespace {

const ModeLabel kVisEarly{Band::visible, TimeBin::early};
const ModeLabel kTelEarly{Band::telecom, TimeBin::early};

ConverterParams reference_params() {
    ConverterParams p;
    p.saturation_a = 0.94;
    p.eta_per_mw = 0.0044;
    return p;
}

}  // namespace

TEST_CASE("parameter validation") {
    ConverterParams p = reference_params();
    CHECK_NOTHROW(p.validate());
    p.saturation_a = 0.0;
    CHECK_THROWS_AS(p.validate(), std::domain_error);
    p = reference_params();
    p.saturation_a = 1.2;
    CHECK_THROWS_AS(p.validate(), std::domain_error);
    p = reference_params();
    p.eta_per_mw = 0.0;
    CHECK_THROWS_AS(p.validate(), std::domain_error);
    p = reference_params();
    p.noise_vis_cps_per_mw2 = -1.0;
    CHECK_THROWS_AS(p.validate(), std::domain_error);
}

TEST_CASE("efficiency at zero pump is full transmission") {
    const auto [t, r] = efficiency(reference_params(), 0.0);
    CHECK(t == 1.0);
    CHECK(r == 0.0);
}

TEST_CASE("efficiency at the fitted operating points") {
    // 1 - 0.94 sin^2(sqrt(0.0044 * 165)) evaluated independently.
    const auto [t165, r165] = efficiency(reference_params(), 165.0);
    CHECK(t165 == doctest::Approx(0.4675267607749414).epsilon(1e-12));
    CHECK(r165 == doctest::Approx(0.5324732392250586).epsilon(1e-12));

    // Near sqrt(eta P) = pi/2 the conversion saturates at A.
    const auto [t560, r560] = efficiency(reference_params(), 560.0);
    CHECK(r560 == doctest::Approx(0.9399988975312593).epsilon(1e-12));
    const double p_star = std::pow(std::numbers::pi / 2.0, 2) / 0.0044;
    CHECK(p_star == doctest::Approx(560.77).epsilon(1e-3));
    CHECK(efficiency(reference_params(), p_star).reflected == doctest::Approx(0.94));
}

TEST_CASE("T + R = 1 exactly for any pump power") {
    Rng rng(5);
    for (int i = 0; i < 500; ++i) {
        const double pump = rng.uniform() * 5000.0;
        const auto [t, r] = efficiency(reference_params(), pump);
        REQUIRE(t + r == 1.0);
    }
    CHECK_THROWS_AS(efficiency(reference_params(), -1.0), std::domain_error);
}

TEST_CASE("R(P) increases strictly up to the first maximum") {
    const ConverterParams p = reference_params();
    const double p_star = std::pow(std::numbers::pi / 2.0, 2) / p.eta_per_mw;
    double previous = -1.0;
    for (int i = 0; i <= 200; ++i) {
        const double pump = p_star * i / 200.0;
        const double r = efficiency(p, pump).reflected;
        REQUIRE(r > previous);
        previous = r;
    }
    CHECK(previous == doctest::Approx(0.94).epsilon(1e-12));
}

TEST_CASE("conversion at zero pump is the identity") {
    OpticalState state;
    state.set_amplitude(kVisEarly, Amp{0.2, 0.1});
    state.set_amplitude(kTelEarly, Amp{0.0, -0.3});
    const auto out = apply_conversion(state, reference_params(), 0.0);
    CHECK(std::abs(out.amplitude(kVisEarly) - state.amplitude(kVisEarly)) <
          kAlgebraicTol);
    CHECK(std::abs(out.amplitude(kTelEarly) - state.amplitude(kTelEarly)) <
          kAlgebraicTol);
}

TEST_CASE("full conversion moves the amplitude and the pump phase") {
    ConverterParams p;
    p.saturation_a = 1.0;
    p.eta_per_mw = 1.0;
    p.pump_phase_rad = 0.7;
    const double pump = std::pow(std::numbers::pi / 2.0, 2);  // sqrt(eta P) = pi/2

    OpticalState state;
    state.set_amplitude(kVisEarly, Amp{0.3, 0.0});
    const auto out = apply_conversion(state, p, pump);
    CHECK(std::abs(out.amplitude(kVisEarly)) < kAlgebraicTol);
    const Amp expected = 0.3 * std::exp(Amp{0.0, -0.7});
    CHECK(std::abs(out.amplitude(kTelEarly) - expected) < kAlgebraicTol);
}

TEST_CASE("partial conversion reproduces the T/R photon split") {
    OpticalState state;
    state.set_amplitude(kVisEarly, std::sqrt(0.1));
    const auto out = apply_conversion(state, reference_params(), 165.0);
    CHECK(mean_photon_number(out, kVisEarly) ==
          doctest::Approx(0.04675267607749414).epsilon(1e-12));
    CHECK(mean_photon_number(out, kTelEarly) ==
          doctest::Approx(0.05324732392250586).epsilon(1e-12));
}

TEST_CASE("conversion conserves photon number for all pump powers") {
    Rng rng(77);
    for (int i = 0; i < 1000; ++i) {
        ConverterParams p = reference_params();
        p.saturation_a = 0.05 + 0.95 * rng.uniform();
        p.pump_phase_rad = rng.uniform() * 2 * std::numbers::pi;
        OpticalState state;
        state.set_amplitude(kVisEarly,
                            Amp{rng.uniform() * 2 - 1, rng.uniform() * 2 - 1});
        state.set_amplitude(kTelEarly,
                            Amp{rng.uniform() * 2 - 1, rng.uniform() * 2 - 1});
        const double pump = rng.uniform() * 700.0;
        const double before = state.total_mean_photon_number();
        const auto out = apply_conversion(state, p, pump);
        REQUIRE(std::abs(out.total_mean_photon_number() - before) < kAlgebraicTol);
    }
}

TEST_CASE("phase preservation on both outputs") {
    Rng rng(123);
    for (int i = 0; i < 1000; ++i) {
        ConverterParams p = reference_params();
        p.pump_phase_rad = rng.uniform() * 2 * std::numbers::pi;
        const double theta = rng.uniform() * 2 * std::numbers::pi - std::numbers::pi;
        const double pump = rng.uniform() * 500.0 + 1.0;

        OpticalState state;
        state.set_amplitude(kVisEarly, std::exp(Amp{0.0, theta}));
        const auto out = apply_conversion(state, p, pump);

        const auto vis = out.amplitude(kVisEarly);
        const auto tel = out.amplitude(kTelEarly);
        REQUIRE(std::abs(vis) > 0.0);
        REQUIRE(std::abs(tel) > 0.0);
        // arg differences wrapped onto (-pi, pi].
        auto wrap = [](double x) {
            return std::remainder(x, 2 * std::numbers::pi);
        };
        REQUIRE(std::abs(wrap(std::arg(vis) - theta)) < kAlgebraicTol);
        REQUIRE(std::abs(wrap(std::arg(tel) - (theta - p.pump_phase_rad))) <
                kAlgebraicTol);
    }
}

TEST_CASE("A = 1 reduces to the exact beamsplitter matrix") {
    ConverterParams p;
    p.saturation_a = 1.0;
    p.eta_per_mw = 1.0;
    p.pump_phase_rad = 0.4;
    Rng rng(9);
    for (int i = 0; i < 200; ++i) {
        const double x = rng.uniform() * std::numbers::pi / 2.0;
        const double pump = x * x;
        OpticalState vis_in, tel_in;
        vis_in.set_amplitude(kVisEarly, 1.0);
        tel_in.set_amplitude(kTelEarly, 1.0);
        const auto col_s = apply_conversion(vis_in, p, pump);
        const auto col_c = apply_conversion(tel_in, p, pump);
        const Amp phase = std::exp(Amp{0.0, p.pump_phase_rad});
        REQUIRE(std::abs(col_s.amplitude(kVisEarly) - std::cos(x)) < kAlgebraicTol);
        REQUIRE(std::abs(col_s.amplitude(kTelEarly) -
                         std::conj(phase) * std::sin(x)) < kAlgebraicTol);
        REQUIRE(std::abs(col_c.amplitude(kVisEarly) + phase * std::sin(x)) <
                kAlgebraicTol);
        REQUIRE(std::abs(col_c.amplitude(kTelEarly) - std::cos(x)) < kAlgebraicTol);
    }
    // Past the efficiency maximum the sign of cos carries through at A = 1.
    const double x = 2.0;
    OpticalState vis_in;
    vis_in.set_amplitude(kVisEarly, 1.0);
    const auto out = apply_conversion(vis_in, p, x * x);
    CHECK(out.amplitude(kVisEarly).real() == doctest::Approx(std::cos(x)));
}

TEST_CASE("noise rates follow their power laws") {
    ConverterParams p = reference_params();
    p.noise_tel_cps_per_mw = 0.1;
    p.noise_vis_cps_per_mw2 = 2e-4;
    p.noise_vis_cps_per_mw = 0.01;
    p.leak_cps = 0.8;
    p.leak_cps_per_alpha2 = 16.0;

    CHECK(noise_rate_telecom(p, 0.0) == 0.0);
    CHECK(noise_rate_telecom(p, 165.0) == doctest::Approx(16.5));
    CHECK(noise_rate_telecom(p, 330.0) ==
          doctest::Approx(2.0 * noise_rate_telecom(p, 165.0)));

    CHECK(noise_rate_visible(p, 0.0) == 0.0);
    ConverterParams quad = p;
    quad.noise_vis_cps_per_mw = 0.0;
    CHECK(noise_rate_visible(quad, 400.0) ==
          doctest::Approx(4.0 * noise_rate_visible(quad, 200.0)));

    CHECK(noise_rate_signal_leak(p, 0.0) == doctest::Approx(0.8));
    ConverterParams flat = p;
    flat.leak_cps_per_alpha2 = 0.0;
    CHECK(noise_rate_signal_leak(flat, 0.5) == doctest::Approx(flat.leak_cps));
    CHECK(noise_rate_signal_leak(p, 1.0) == doctest::Approx(16.8));
}
