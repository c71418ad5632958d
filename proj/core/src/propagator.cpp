#include "matterwave/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "matterwave/fft.hpp"

namespace matterwave {

namespace {

constexpr Complex kI{0.0, 1.0};

void record(RunDiagnostics* diag, const Spinor& s, double norm_in) {
    if (!diag) return;
    diag->record_edge(edge_fraction(s));
    diag->record_norm_drift(std::abs(norm_total(s) - norm_in));
}

std::vector<double> potential_values(const Spinor& s, const PotentialSpec& pot) {
    const Grid& g = s.grid;
    std::vector<double> v(g.n(), 0.0);
    const double m = s.params.mass;
    if (pot.kind == PotentialSpec::Kind::harmonic) {
        const double c = 0.5 * m * pot.omega * pot.omega;
        for (int i = 0; i < g.n(); ++i) {
            const double u = g.z()[i] - pot.z0;
            v[i] = c * u * u;
        }
    }
    if (pot.kind != PotentialSpec::Kind::none && pot.gravity_enabled && pot.g != 0.0) {
        for (int i = 0; i < g.n(); ++i) v[i] += m * pot.g * g.z()[i];
    }
    return v;
}

void apply_phase(Field& f, const std::vector<Complex>& phase) {
    for (std::size_t i = 0; i < f.size(); ++i) f[i] *= phase[i];
}

std::vector<Complex> exp_phase(const std::vector<double>& arg) {
    std::vector<Complex> out(arg.size());
    for (std::size_t i = 0; i < arg.size(); ++i) out[i] = std::exp(Complex{0.0, arg[i]});
    return out;
}

} // namespace

PotentialSpec PotentialSpec::free_space() { return {Kind::none, 0, 0, 0, false}; }

PotentialSpec PotentialSpec::linear(double g) { return {Kind::linear_gravity, g, 0, 0, true}; }

PotentialSpec PotentialSpec::harmonic(double omega, double z0, bool gravity_on, double g) {
    return {Kind::harmonic, g, omega, z0, gravity_on};
}

void PotentialSpec::validate() const {
    if (kind == Kind::harmonic && omega <= 0.0)
        throw std::invalid_argument("PotentialSpec: harmonic potential needs omega > 0");
}

void RunDiagnostics::record_edge(double fraction) {
    max_edge_fraction = std::max(max_edge_fraction, fraction);
    if (fraction > kEdgeLimit && valid) {
        valid = false;
        reason = "edge-density monitor exceeded";
    }
}

void RunDiagnostics::record_norm_drift(double drift) {
    max_norm_drift = std::max(max_norm_drift, drift);
    if (drift > kNormDriftLimit && valid) {
        valid = false;
        reason = "norm drift exceeded";
    }
}

Spinor evolve_split_step(Spinor state, double duration, const PotentialSpec& pot, double dt,
                         RunDiagnostics* diag) {
    pot.validate();
    if (duration < 0.0) throw std::invalid_argument("evolve_split_step: negative duration");
    if (dt <= 0.0) throw std::invalid_argument("evolve_split_step: dt must be positive");
    if (duration == 0.0) return state;

    const double norm_in = norm_total(state);
    const Grid& g = state.grid;
    const int n = g.n();
    const double hbar = state.params.hbar;
    const double mass = state.params.mass;

    long steps = static_cast<long>(duration / dt);
    double remainder = duration - steps * dt;
    if (remainder < 1e-12 * dt) remainder = 0.0;

    SpectralTransform ft(n);
    const std::vector<double> v = potential_values(state, pot);

    auto kinetic_phase = [&](double tau) {
        std::vector<double> arg(n);
        for (int i = 0; i < n; ++i) {
            const double k = g.wavenumbers()[i];
            arg[i] = -hbar * k * k * tau / (2.0 * mass);
        }
        return exp_phase(arg);
    };
    auto potential_phase = [&](double tau) {
        std::vector<double> arg(n);
        for (int i = 0; i < n; ++i) arg[i] = -v[i] * tau / hbar;
        return exp_phase(arg);
    };

    auto run_block = [&](Spinor& s, long nsteps, double step) {
        if (nsteps == 0) return;
        const auto khalf = kinetic_phase(0.5 * step);
        const auto kfull = kinetic_phase(step);
        const auto vfull = potential_phase(step);
        // K(dt/2) V K(dt) V ... V K(dt/2): consecutive half kicks fused.
        ft.forward(s.a);
        ft.forward(s.b);
        apply_phase(s.a, khalf);
        apply_phase(s.b, khalf);
        for (long step_i = 0; step_i < nsteps; ++step_i) {
            ft.inverse(s.a);
            ft.inverse(s.b);
            apply_phase(s.a, vfull);
            apply_phase(s.b, vfull);
            ft.forward(s.a);
            ft.forward(s.b);
            if (step_i + 1 < nsteps) {
                apply_phase(s.a, kfull);
                apply_phase(s.b, kfull);
            }
        }
        apply_phase(s.a, khalf);
        apply_phase(s.b, khalf);
        ft.inverse(s.a);
        ft.inverse(s.b);
    };

    run_block(state, steps, dt);
    if (remainder > 0.0) run_block(state, 1, remainder);

    record(diag, state, norm_in);
    return state;
}

// U_g(T) factorisation: with G0(T) = (T/hbar)(T p/2 + m z),
//   U_g(T) = exp(-i T p^2 / 2 m hbar) exp(-i g G0(T)) exp(+i m g^2 T^3 / 12 hbar)
// and the generator itself splits as
//   exp(-i g G0(T)) = exp(-i (g T^2/2) p / hbar) exp(-i (m g T/hbar) z)
//                     exp(-i m g^2 T^3 / 4 hbar).
// Both momentum-diagonal factors share one transform round trip.
Spinor apply_ug_analytic(Spinor state, double duration, double g, RunDiagnostics* diag) {
    if (duration < 0.0) throw std::invalid_argument("apply_ug_analytic: negative duration");
    if (duration == 0.0) return state;

    const double norm_in = norm_total(state);
    const Grid& grid = state.grid;
    const int n = grid.n();
    const double hbar = state.params.hbar;
    const double mass = state.params.mass;
    const double T = duration;

    const double scalar = -mass * g * g * T * T * T / (4.0 * hbar) +
                          mass * g * g * T * T * T / (12.0 * hbar);
    const Complex scalar_phase = std::exp(Complex{0.0, scalar});

    std::vector<double> arg(n);
    for (int i = 0; i < n; ++i) arg[i] = -mass * g * T * grid.z()[i] / hbar;
    const auto zphase = exp_phase(arg);
    for (int i = 0; i < n; ++i) {
        const double k = grid.wavenumbers()[i];
        arg[i] = -0.5 * g * T * T * k - hbar * k * k * T / (2.0 * mass);
    }
    const auto kphase = exp_phase(arg);

    SpectralTransform ft(n);
    for (auto field : {&state.a, &state.b}) {
        apply_phase(*field, zphase);
        ft.forward(*field);
        apply_phase(*field, kphase);
        ft.inverse(*field);
        for (auto& v : *field) v *= scalar_phase;
    }

    record(diag, state, norm_in);
    return state;
}

Spinor apply_g0_generator(Spinor state, double strength, double T) {
    if (strength == 0.0 || T == 0.0) return state;

    const Grid& grid = state.grid;
    const int n = grid.n();
    const double hbar = state.params.hbar;
    const double mass = state.params.mass;
    const double s = strength;

    const Complex scalar_phase = std::exp(Complex{0.0, -mass * s * s * T * T * T / (4.0 * hbar)});

    std::vector<double> arg(n);
    for (int i = 0; i < n; ++i) arg[i] = -mass * s * T * grid.z()[i] / hbar;
    const auto zphase = exp_phase(arg);
    for (int i = 0; i < n; ++i) arg[i] = -0.5 * s * T * T * grid.wavenumbers()[i];
    const auto kphase = exp_phase(arg);

    SpectralTransform ft(n);
    for (auto field : {&state.a, &state.b}) {
        apply_phase(*field, zphase);
        ft.forward(*field);
        apply_phase(*field, kphase);
        ft.inverse(*field);
        for (auto& v : *field) v *= scalar_phase;
    }
    return state;
}

Spinor evolve_hbs(Spinor state, const FinitePulseParams& pulse, double dt,
                  RunDiagnostics* diag) {
    if (pulse.duration <= 0.0) throw std::invalid_argument("evolve_hbs: duration must be positive");
    if (dt <= 0.0) throw std::invalid_argument("evolve_hbs: dt must be positive");
    const double omega_rabi = pulse.rabi_frequency();
    if (omega_rabi * dt > 0.1)
        throw std::invalid_argument("evolve_hbs: dt too coarse, need Omega*dt <= 0.1 rad");

    const double norm_in = norm_total(state);
    const Grid& g = state.grid;
    const int n = g.n();
    const double hbar = state.params.hbar;
    const double mass = state.params.mass;
    const double k0 = state.params.k0;
    const double delta = pulse.detuning.value_or(state.params.recoil_detuning());

    long steps = static_cast<long>(pulse.duration / dt);
    double remainder = pulse.duration - steps * dt;
    if (remainder < 1e-12 * dt) remainder = 0.0;

    SpectralTransform ft(n);

    // Coupling matrix per point: V = c0*1 + c.sigma with
    //   c0 = m g z - hbar delta / 2,  cz = hbar delta / 2,
    //   cx + i cy = (hbar Omega / 2) e^{i (k0 z - phi)}.
    // |c| is position independent, so the rotation angle is one number.
    const double nu = 0.5 * hbar * std::sqrt(omega_rabi * omega_rabi + delta * delta);
    const double inv_nu = nu > 0.0 ? 1.0 / nu : 0.0;

    auto apply_coupling = [&](Spinor& s, double tau) {
        const double lambda = nu * tau / hbar;
        const double c = std::cos(lambda), sn = std::sin(lambda);
        const double hz = 0.5 * hbar * delta * inv_nu;
        const double hcoup = 0.5 * hbar * omega_rabi * inv_nu;
        for (int i = 0; i < n; ++i) {
            const double z = g.z()[i];
            const double c0 = (pulse.gravity_enabled ? mass * pulse.g * z : 0.0) -
                              0.5 * hbar * delta;
            const Complex global = std::exp(Complex{0.0, -c0 * tau / hbar});
            const double theta = k0 * z - pulse.phi;
            const Complex e_minus = std::exp(Complex{0.0, -theta});
            const Complex e_plus = std::conj(e_minus);
            const Complex va = s.a[i], vb = s.b[i];
            // exp(-i tau (c.sigma)/hbar) = cos(lambda) - i sin(lambda) (chat.sigma)
            s.a[i] = global * ((c - kI * sn * hz) * va - kI * sn * hcoup * e_minus * vb);
            s.b[i] = global * (-kI * sn * hcoup * e_plus * va + (c + kI * sn * hz) * vb);
        }
    };

    auto kinetic_phase = [&](double tau) {
        std::vector<double> arg(n);
        for (int i = 0; i < n; ++i) {
            const double k = g.wavenumbers()[i];
            arg[i] = -hbar * k * k * tau / (2.0 * mass);
        }
        return exp_phase(arg);
    };

    auto run_block = [&](Spinor& s, long nsteps, double step) {
        if (nsteps == 0) return;
        const auto khalf = kinetic_phase(0.5 * step);
        for (long i = 0; i < nsteps; ++i) {
            ft.forward(s.a);
            ft.forward(s.b);
            apply_phase(s.a, khalf);
            apply_phase(s.b, khalf);
            ft.inverse(s.a);
            ft.inverse(s.b);
            apply_coupling(s, step);
            ft.forward(s.a);
            ft.forward(s.b);
            apply_phase(s.a, khalf);
            apply_phase(s.b, khalf);
            ft.inverse(s.a);
            ft.inverse(s.b);
        }
    };

    run_block(state, steps, dt);
    if (remainder > 0.0) run_block(state, 1, remainder);

    record(diag, state, norm_in);
    return state;
}

} // namespace matterwave
