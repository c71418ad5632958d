#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "matterwave/distribution.hpp"
#include "matterwave/grid.hpp"
#include "matterwave/physics.hpp"

namespace matterwave {

using Complex = std::complex<double>;
using Field = std::vector<Complex>;

// Two-component wavefunction over a Grid; a and b are the amplitudes of the
// two internal states. Plain value type; operations on it are pure and
// return new states, so independent spinors can be propagated concurrently.
struct Spinor {
    Grid grid;
    PhysicalParams params;
    Field a;
    Field b;
};

struct Moments {
    double mean_z = 0.0;
    double mean_p = 0.0;
    double var_z = 0.0;
    double var_p = 0.0;
    double cov_zp = 0.0; // symmetrized quantum covariance 1/2<{z-<z>, p-<p>}>
};

// Gaussian wavepacket exp(-(z-zc)^2/2 sigma^2)/(pi sigma^2)^(1/4), boosted
// to momentum p_center, all amplitude in |a>. Rejects sigma < 4 dz.
Spinor gaussian(const Grid& grid, const PhysicalParams& params, double sigma,
                double z_center = 0.0, double p_center = 0.0);

// Position-focused input exp(-(1/4+i) z^2/2 sigma^2)/[pi (2 sigma)^2]^(1/4):
// doubled spatial width and a negative z-p correlation that counteracts
// ballistic expansion.
Spinor chirped_gaussian(const Grid& grid, const PhysicalParams& params, double sigma);

double norm_total(const Spinor& s);

// Fraction of the norm within the outermost 5% of lattice points at each
// boundary; the run-validity monitor for periodic wrap-around.
double edge_fraction(const Spinor& s);

Moments moments(const Spinor& s);

// Discrete inner product sum conj(x) y dz over both components.
Complex overlap(const Spinor& x, const Spinor& y);

// Rigid displacement by `shift` via a momentum-space phase.
Spinor translate(const Spinor& s, double shift);

std::pair<double, double> populations(const Spinor& s);

Distribution measure_distribution(const Spinor& s, Basis basis, bool per_state = false);

} // namespace matterwave
