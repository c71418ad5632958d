#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "matterwave/pulses.hpp"
#include "matterwave/sequence.hpp"

using namespace matterwave;

namespace {

constexpr double pi = std::numbers::pi;
const PhysicalParams P{};
const Grid g = make_grid(2048, -128.0, 192.0);

double fidelity(const Spinor& x, const Spinor& y) { return std::abs(overlap(x, y)); }

} // namespace

TEST_CASE("pi/2 pulse splits the population and kicks component b") {
    const Spinor s = gaussian(g, P, 10.0);
    const Spinor out = apply_pulse(s, PulseSpec::beam_splitter());
    const auto [pa, pb] = populations(out);
    CHECK(pa == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(pb == doctest::Approx(0.5).epsilon(1e-12));

    const Distribution dm = measure_distribution(out, Basis::momentum, true);
    const std::size_t n = dm.block_size();
    double mean_b = 0.0, mass_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_b += dm.outcomes[n + i] * dm.mass[n + i];
        mass_b += dm.mass[n + i];
    }
    CHECK(mean_b / mass_b == doctest::Approx(P.hbar * P.k0).epsilon(1e-8));
}

TEST_CASE("pi pulse is a mirror") {
    const Spinor s = gaussian(g, P, 10.0);
    const Spinor out = apply_pulse(s, PulseSpec::mirror());
    const auto [pa, pb] = populations(out);
    CHECK(pa == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(pb == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(moments(out).mean_p == doctest::Approx(P.hbar * P.k0).epsilon(1e-8));
}

TEST_CASE("2 pi pulse is the identity up to sign") {
    const Spinor s = gaussian(g, P, 10.0);
    const Spinor out = apply_pulse(s, PulseSpec{2.0 * pi, 0.3});
    CHECK(overlap(s, out).real() == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("pulses are unitary and invertible") {
    Spinor s = apply_pulse(gaussian(g, P, 10.0), PulseSpec{1.1, 0.4});
    CHECK(norm_total(s) == doctest::Approx(1.0).epsilon(1e-12));

    // U(theta, phi + pi) inverts U(theta, phi)
    const Spinor back = apply_pulse(s, PulseSpec{1.1, 0.4 + pi});
    const Spinor orig = gaussian(g, P, 10.0);
    const Spinor fwd = apply_pulse(orig, PulseSpec{1.1, 0.4});
    CHECK(fidelity(apply_pulse(fwd, PulseSpec{1.1, 0.4 + pi}), orig) ==
          doctest::Approx(1.0).epsilon(1e-12));
    (void)back;
}

TEST_CASE("momentum reunite recentres component b") {
    const Spinor split = apply_pulse(gaussian(g, P, 10.0), PulseSpec::beam_splitter());
    const Spinor out = apply_momentum_reunite(split);

    const Distribution dm = measure_distribution(out, Basis::momentum, true);
    const std::size_t n = dm.block_size();
    double mean_a = 0.0, mass_a = 0.0, mean_b = 0.0, mass_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_a += dm.outcomes[i] * dm.mass[i];
        mass_a += dm.mass[i];
        mean_b += dm.outcomes[n + i] * dm.mass[n + i];
        mass_b += dm.mass[n + i];
    }
    CHECK(mean_b / mass_b == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(mean_a / mass_a - mean_b / mass_b == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("reunite leaves a pure |a> state alone and is unitary") {
    const Spinor s = gaussian(g, P, 10.0);
    CHECK(fidelity(apply_momentum_reunite(s), s) == doctest::Approx(1.0).epsilon(1e-12));

    const Spinor split = apply_pulse(s, PulseSpec::beam_splitter());
    CHECK(norm_total(apply_momentum_reunite(split)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("final beam splitter algebra") {
    const Spinor s = gaussian(g, P, 10.0);
    const Spinor once = apply_final_bs(s);
    const auto [pa, pb] = populations(once);
    CHECK(pa == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(pb == doctest::Approx(0.5).epsilon(1e-12));

    // four applications return the state up to sign
    Spinor four = s;
    for (int i = 0; i < 4; ++i) four = apply_final_bs(four);
    CHECK(overlap(s, four).real() == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("mirror at the closing instant does not change the readout") {
    // With T2 = 0 the three-pulse sequence and the mirrorless one give the
    // same populations and the same population CFI at the default phases.
    const Spinor s0 = gaussian(g, P, 10.0);
    const double t = 15.0, grav = 2e-5;

    auto with_mirror = [&](double gg) {
        SequenceSpec seq;
        seq.events.push_back(PulseEvent{PulseSpec::beam_splitter(0.0)});
        seq.events.push_back(FreeEvent{t, true});
        seq.events.push_back(PulseEvent{PulseSpec::mirror(0.0)});
        seq.events.push_back(PulseEvent{PulseSpec::beam_splitter(pi / 2.0)});
        return run_sequence(seq, gg, s0);
    };
    auto without_mirror = [&](double gg) { return run_sequence(build_ramsey(t), gg, s0); };

    for (double gg : {0.0, grav, -grav}) {
        const auto [pa1, pb1] = populations(with_mirror(gg));
        const auto [pa2, pb2] = populations(without_mirror(gg));
        CHECK(pa1 == doctest::Approx(pa2).epsilon(1e-9));
        CHECK(pb1 == doctest::Approx(pb2).epsilon(1e-9));
    }
}
