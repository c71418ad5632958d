#include "matterwave/physics.hpp"

namespace matterwave {

NaturalScales natural_units(double k0_si, double m_si, double hbar_si) {
    if (k0_si <= 0.0 || m_si <= 0.0 || hbar_si <= 0.0) {
        throw std::invalid_argument("natural_units: all inputs must be positive");
    }
    return {1.0 / k0_si, m_si / (hbar_si * k0_si * k0_si)};
}

} // namespace matterwave
