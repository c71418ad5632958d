#include "matterwave/pulses.hpp"

#include <cmath>

namespace matterwave {

namespace {
constexpr Complex kI{0.0, 1.0};
}

Spinor apply_pulse(const Spinor& s, const PulseSpec& pulse) {
    Spinor out = s;
    const double c = std::cos(0.5 * pulse.theta);
    const double sn = std::sin(0.5 * pulse.theta);
    const double k0 = s.params.k0;
    for (int i = 0; i < s.grid.n(); ++i) {
        const double theta_z = k0 * s.grid.z()[i] - pulse.phi;
        const Complex up = std::exp(Complex{0.0, theta_z});
        const Complex down = std::conj(up);
        out.a[i] = c * s.a[i] - kI * sn * down * s.b[i];
        out.b[i] = c * s.b[i] - kI * sn * up * s.a[i];
    }
    return out;
}

Spinor apply_momentum_reunite(const Spinor& s) {
    Spinor out = s;
    const double k0 = s.params.k0;
    for (int i = 0; i < s.grid.n(); ++i) {
        out.b[i] *= std::exp(Complex{0.0, -k0 * s.grid.z()[i]});
    }
    return out;
}

Spinor apply_final_bs(const Spinor& s) {
    Spinor out = s;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < s.grid.n(); ++i) {
        const Complex va = s.a[i], vb = s.b[i];
        out.a[i] = inv_sqrt2 * (va + vb);
        out.b[i] = inv_sqrt2 * (vb - va);
    }
    return out;
}

} // namespace matterwave
