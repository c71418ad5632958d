#pragma once

#include <optional>
#include <string>

#include "matterwave/spinor.hpp"

namespace matterwave {

struct PotentialSpec {
    enum class Kind { none, linear_gravity, harmonic };

    Kind kind = Kind::none;
    double g = 0.0;     // acceleration entering as +m*g*z
    double omega = 0.0; // harmonic frequency
    double z0 = 0.0;    // harmonic centre
    bool gravity_enabled = true;

    static PotentialSpec free_space();
    static PotentialSpec linear(double g);
    static PotentialSpec harmonic(double omega, double z0, bool gravity_on = false,
                                  double g = 0.0);

    void validate() const;
};

// Numerical-validity record threaded through propagation. A run stays valid
// while the edge monitor and the norm drift remain below their limits.
struct RunDiagnostics {
    double max_edge_fraction = 0.0;
    double max_norm_drift = 0.0;
    bool valid = true;
    std::string reason;

    void record_edge(double fraction);
    void record_norm_drift(double drift);
};

inline constexpr double kEdgeLimit = 1e-10;
inline constexpr double kNormDriftLimit = 1e-8;

// Strang-split evolution: half kinetic step in momentum space, full potential
// phase in position space, half kinetic step. The potential acts identically
// on both spinor components. dt need not divide the duration exactly; the
// remainder is taken as one short final step.
Spinor evolve_split_step(Spinor state, double duration, const PotentialSpec& pot,
                         double dt, RunDiagnostics* diag = nullptr);

// Exact (to grid resolution) evolution under p^2/2m + m g z via the
// factorisation into a position phase, a momentum-space translation, the
// kinetic propagator and the scalar commutator phases.
Spinor apply_ug_analytic(Spinor state, double duration, double g,
                         RunDiagnostics* diag = nullptr);

// exp(-i s G0(T)) with G0(T) = (T/hbar)(T p/2 + m z), split the same way.
Spinor apply_g0_generator(Spinor state, double strength, double T);

// Finite-duration Raman coupling: kinetic + detuning + position-dependent
// two-level coupling. The potential half-step is the closed-form 2x2 matrix
// exponential per lattice point.
struct FinitePulseParams {
    double pulse_area = 0.0; // Omega * duration
    double phi = 0.0;
    double duration = 0.0;
    std::optional<double> detuning; // default: two-photon resonance hbar k0^2/(2m)
    double g = 0.0;
    bool gravity_enabled = false;

    double rabi_frequency() const { return pulse_area / duration; }
};

Spinor evolve_hbs(Spinor state, const FinitePulseParams& pulse, double dt,
                  RunDiagnostics* diag = nullptr);

} // namespace matterwave
