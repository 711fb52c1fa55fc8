#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "circuit.hpp"
#include "rng.hpp"
#include "version.hpp"

using namespace pwcsim;

namespace {

const ModeLabel kVisEarly{Band::visible, TimeBin::early};
const ModeLabel kVisLate{Band::visible, TimeBin::late};

CircuitConfig reference_circuit() {
    CircuitConfig c;
    c.alpha2 = 0.1;
    c.t_in = 0.5;
    c.t_vis = 0.06;
    c.t_tel = 0.09;
    c.pump_mw = 165.0;
    return c;
}

ConverterParams quiet_converter() {
    ConverterParams p;
    p.saturation_a = 0.94;
    p.eta_per_mw = 0.0044;
    return p;
}

}  // namespace

TEST_CASE("build_input prepares two visible bins with the scan phase") {
    const auto vacuum = build_input(0.0, 1.0);
    CHECK(vacuum.total_mean_photon_number() == 0.0);

    const auto flat = build_input(0.1, 0.0);
    CHECK(std::abs(flat.amplitude(kVisEarly) - std::sqrt(0.1)) < kAlgebraicTol);
    CHECK(std::abs(flat.amplitude(kVisLate) - std::sqrt(0.1)) < kAlgebraicTol);

    const auto flipped = build_input(0.1, std::numbers::pi);
    CHECK(std::abs(flipped.amplitude(kVisLate) + std::sqrt(0.1)) < kAlgebraicTol);
}

TEST_CASE("config validation guards the time ordering") {
    CircuitConfig c = reference_circuit();
    CHECK_NOTHROW(c.validate());
    c.window_s = 700e-12;  // window > delay
    CHECK_THROWS_AS(c.validate(), std::domain_error);
    c = reference_circuit();
    c.delay_s = 13e-9;  // delay > repetition period
    CHECK_THROWS_AS(c.validate(), std::domain_error);
    c = reference_circuit();
    c.t_vis = 1.5;
    CHECK_THROWS_AS(c.validate(), std::domain_error);
}

TEST_CASE("zero pump leaves the telecom band dark") {
    CircuitConfig c = reference_circuit();
    c.pump_mw = 0.0;
    const auto rates = propagate(c, quiet_converter());
    CHECK(rates.telecom.middle_cps == 0.0);
    CHECK(rates.telecom.early_cps == 0.0);
    // Visible middle peak is maximal at delta = 0.
    CircuitConfig shifted = c;
    shifted.scan_phase_rad = 1.0;
    CHECK(rates.visible.middle_cps >
          propagate(shifted, quiet_converter()).visible.middle_cps);
}

TEST_CASE("visible middle-peak rate at T = 1/2 is 1500 counts/s") {
    // A = 1 with sqrt(eta P) = pi/4 pins T = R = 1/2 exactly, so the rate is
    // f alpha2 T_in T T_V = 1e6 * 0.1 * 0.03 * 0.5.
    ConverterParams p = quiet_converter();
    p.saturation_a = 1.0;
    CircuitConfig c = reference_circuit();
    c.pump_mw = std::pow(std::numbers::pi / 4.0, 2) / p.eta_per_mw;
    const auto rates = propagate(c, p);
    CHECK(rates.visible.middle_cps == doctest::Approx(1500.0).epsilon(1e-9));
}

TEST_CASE("destructive interference empties the middle peak") {
    CircuitConfig c = reference_circuit();
    c.scan_phase_rad = std::numbers::pi;
    const auto rates = propagate(c, quiet_converter());
    CHECK(rates.visible.middle_cps < kAccumulatedTol);
    CHECK(rates.telecom.middle_cps < kAccumulatedTol);
    CHECK(rates.visible.background_cps == 0.0);
}

TEST_CASE("side peaks are half the constructive middle peak") {
    const auto rates = propagate(reference_circuit(), quiet_converter());
    for (Band band : {Band::visible, Band::telecom}) {
        const auto& b = rates.band(band);
        CHECK(b.early_cps == doctest::Approx(b.middle_cps / 2.0).epsilon(1e-12));
        CHECK(b.late_cps == doctest::Approx(b.middle_cps / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("middle peak follows 1 + cos(delta - delta0)") {
    const CircuitConfig base = reference_circuit();
    const ConverterParams p = quiet_converter();
    const double peak = propagate(base, p).visible.middle_cps;
    Rng rng(31);
    for (int i = 0; i < 100; ++i) {
        const double delta = rng.uniform() * 2 * std::numbers::pi;
        CircuitConfig c = base;
        c.scan_phase_rad = delta;
        const auto rates = propagate(c, p);
        const double expected = peak * (1.0 + std::cos(delta)) / 2.0;
        REQUIRE(rates.visible.middle_cps == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("scan-phase shift is equivalent to a fringe-offset shift") {
    const ConverterParams p = quiet_converter();
    Rng rng(8);
    for (int i = 0; i < 100; ++i) {
        const double delta = rng.uniform() * 2 * std::numbers::pi;
        const double shift = rng.uniform() * 2 * std::numbers::pi;
        CircuitConfig moved = reference_circuit();
        moved.scan_phase_rad = delta + shift;
        CircuitConfig biased = reference_circuit();
        biased.scan_phase_rad = delta;
        biased.fringe_offset_rad = -shift;
        REQUIRE(propagate(moved, p).visible.middle_cps ==
                doctest::Approx(propagate(biased, p).visible.middle_cps)
                    .epsilon(1e-9));
    }
}

TEST_CASE("background rate does not depend on the scan phase") {
    ConverterParams p = quiet_converter();
    p.noise_vis_cps_per_mw2 = 3e-4;
    p.noise_tel_cps_per_mw = 0.06;
    p.leak_cps = 0.8;
    p.leak_cps_per_alpha2 = 16.0;
    CircuitConfig c = reference_circuit();
    const auto ref = propagate(c, p);
    for (double delta : {0.3, 1.7, 4.4}) {
        c.scan_phase_rad = delta;
        const auto rates = propagate(c, p);
        CHECK(rates.visible.background_cps == ref.visible.background_cps);
        CHECK(rates.telecom.background_cps == ref.telecom.background_cps);
    }
    CHECK(ref.visible.background_cps > 0.0);
    CHECK(ref.telecom.background_cps > 0.0);
}

TEST_CASE("energy audit at delta = 0") {
    const CircuitConfig c = reference_circuit();
    const ConverterParams p = quiet_converter();
    const auto rates = propagate(c, p);
    const auto [t, r] = efficiency(p, c.pump_mw);
    const double expected =
        c.f_clock_hz * c.alpha2 * c.t_in * (t * c.t_vis + r * c.t_tel);
    CHECK(rates.visible.middle_cps + rates.telecom.middle_cps ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("fringe scan hits the extremes of the cosine law") {
    const auto scan = fringe_scan(reference_circuit(), quiet_converter(),
                                  {0.0, std::numbers::pi});
    REQUIRE(scan.size() == 2);
    CHECK(scan[0].second.visible.middle_cps > 0.0);
    CHECK(scan[1].second.visible.middle_cps < kAccumulatedTol);
    CHECK_THROWS_AS(fringe_scan(reference_circuit(), quiet_converter(), {}),
                    std::invalid_argument);
}

TEST_CASE("conversion curve rates and ratio invariants") {
    const CircuitConfig c = reference_circuit();
    const ConverterParams p = quiet_converter();
    std::vector<double> pumps;
    for (int i = 0; i <= 70; ++i) pumps.push_back(10.0 * i);
    const auto curve = conversion_curve(c, p, pumps);

    const double c0 = c.f_clock_hz * c.alpha2 * c.t_in * c.t_vis;
    CHECK(curve.front().telecom_cps == 0.0);
    CHECK(curve.front().visible_cps == doctest::Approx(c0).epsilon(1e-12));

    for (const auto& point : curve) {
        const auto [t, r] = efficiency(p, point.pump_mw);
        REQUIRE(point.visible_cps / c0 == doctest::Approx(t).epsilon(1e-12));
        if (point.pump_mw > 0.0) {
            const double ratio = point.telecom_cps / (c0 - point.visible_cps);
            REQUIRE(ratio == doctest::Approx(c.t_tel / c.t_vis).epsilon(1e-9));
        }
    }
}

TEST_CASE("intrinsic visibility scales the fringe contrast") {
    CircuitConfig c = reference_circuit();
    c.intrinsic_visibility = 0.8;
    const double peak = propagate(c, quiet_converter()).visible.middle_cps;
    c.scan_phase_rad = std::numbers::pi;
    const double trough = propagate(c, quiet_converter()).visible.middle_cps;
    CHECK((peak - trough) / (peak + trough) == doctest::Approx(0.8).epsilon(1e-12));
}
