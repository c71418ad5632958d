#pragma once

#include <numbers>

#include "matterwave/spinor.hpp"

namespace matterwave {

struct PulseSpec {
    double theta = 0.0; // pulse area in [0, 2 pi]
    double phi = 0.0;

    static PulseSpec beam_splitter(double phi = 0.0) {
        return {std::numbers::pi / 2.0, phi};
    }
    static PulseSpec mirror(double phi = 0.0) { return {std::numbers::pi, phi}; }
};

// Instantaneous Raman pulse:
//   a' = cos(theta/2) a - i sin(theta/2) e^{-i(k0 z - phi)} b
//   b' = cos(theta/2) b - i sin(theta/2) e^{+i(k0 z - phi)} a
Spinor apply_pulse(const Spinor& s, const PulseSpec& pulse);

// |a><a| + |b><b| e^{-i k0 z}: removes the momentum mismatch between the
// two modes before the trap stage.
Spinor apply_momentum_reunite(const Spinor& s);

// (1 + |a><b| - |b><a|)/sqrt(2), applied immediately before measurement.
Spinor apply_final_bs(const Spinor& s);

} // namespace matterwave
