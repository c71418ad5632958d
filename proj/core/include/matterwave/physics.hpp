#pragma once

#include <stdexcept>

namespace matterwave {

// Model constants. Natural units (hbar = mass = k0 = 1) are the defaults;
// lengths are then measured in 1/k0 and times in mass/(hbar*k0^2).
struct PhysicalParams {
    double hbar = 1.0;
    double mass = 1.0;
    double k0 = 1.0;       // wavenumber of the two-photon momentum kick
    double g_offset = 0.0; // working-point acceleration added to every run

    void validate() const {
        if (hbar <= 0.0 || mass <= 0.0 || k0 <= 0.0) {
            throw std::invalid_argument(
                "PhysicalParams: hbar, mass and k0 must all be positive");
        }
    }

    // Two-photon resonance condition hbar*k0^2/(2m).
    double recoil_detuning() const { return hbar * k0 * k0 / (2.0 * mass); }
};

struct NaturalScales {
    double length; // 1/k0
    double time;   // m/(hbar*k0^2)
};

// Conversion between SI inputs and the natural unit system.
NaturalScales natural_units(double k0_si, double m_si, double hbar_si);

} // namespace matterwave
