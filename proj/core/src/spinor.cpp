#include "matterwave/spinor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "matterwave/fft.hpp"

namespace matterwave {

namespace {

constexpr Complex kI{0.0, 1.0};

void scale(Spinor& s, double factor) {
    for (auto& v : s.a) v *= factor;
    for (auto& v : s.b) v *= factor;
}

// Same edge budget the propagation monitor uses.
constexpr double kBuildEdgeLimit = 1e-10;

void check_state_fits(const Spinor& s, const char* who) {
    if (edge_fraction(s) > kBuildEdgeLimit)
        throw std::invalid_argument(std::string(who) +
                                    ": wavepacket support does not fit the grid");
}

} // namespace

Spinor gaussian(const Grid& grid, const PhysicalParams& params, double sigma,
                double z_center, double p_center) {
    params.validate();
    if (sigma <= 0.0) throw std::invalid_argument("gaussian: sigma must be positive");
    if (sigma < 4.0 * grid.dz())
        throw std::invalid_argument("gaussian: sigma under-resolved, need sigma >= 4 dz");

    Spinor s;
    s.grid = grid;
    s.params = params;
    s.a.resize(grid.n());
    s.b.assign(grid.n(), Complex{0.0, 0.0});

    const double amp = std::pow(std::numbers::pi * sigma * sigma, -0.25);
    for (int i = 0; i < grid.n(); ++i) {
        const double u = grid.z()[i] - z_center;
        const double phase = p_center * u / params.hbar;
        s.a[i] = amp * std::exp(-u * u / (2.0 * sigma * sigma)) *
                 std::exp(kI * phase);
    }
    scale(s, 1.0 / std::sqrt(norm_total(s)));
    check_state_fits(s, "gaussian");
    return s;
}

Spinor chirped_gaussian(const Grid& grid, const PhysicalParams& params, double sigma) {
    params.validate();
    if (sigma <= 0.0) throw std::invalid_argument("chirped_gaussian: sigma must be positive");
    // Effective spatial width is 2 sigma; require it resolved as in gaussian.
    if (2.0 * sigma < 4.0 * grid.dz())
        throw std::invalid_argument("chirped_gaussian: sigma under-resolved");

    Spinor s;
    s.grid = grid;
    s.params = params;
    s.a.resize(grid.n());
    s.b.assign(grid.n(), Complex{0.0, 0.0});

    const double amp = std::pow(std::numbers::pi * 4.0 * sigma * sigma, -0.25);
    const Complex chirp = Complex{0.25, 1.0} / (2.0 * sigma * sigma);
    for (int i = 0; i < grid.n(); ++i) {
        const double z = grid.z()[i];
        s.a[i] = amp * std::exp(-chirp * z * z);
    }
    scale(s, 1.0 / std::sqrt(norm_total(s)));
    check_state_fits(s, "chirped_gaussian");
    return s;
}

double norm_total(const Spinor& s) {
    double sum = 0.0;
    for (const auto& v : s.a) sum += std::norm(v);
    for (const auto& v : s.b) sum += std::norm(v);
    return sum * s.grid.dz();
}

double edge_fraction(const Spinor& s) {
    const int n = s.grid.n();
    const int m = std::max(1, n / 20);
    double edge = 0.0, total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = std::norm(s.a[i]) + std::norm(s.b[i]);
        total += d;
        if (i < m || i >= n - m) edge += d;
    }
    return total > 0.0 ? edge / total : 0.0;
}

namespace {

void require_normalized(const Spinor& s, const char* who) {
    if (std::abs(norm_total(s) - 1.0) > 1e-6)
        throw std::invalid_argument(std::string(who) + ": state is not normalized");
}

} // namespace

Moments moments(const Spinor& s) {
    require_normalized(s, "moments");
    const Grid& g = s.grid;
    const int n = g.n();
    const double dz = g.dz();
    const double hbar = s.params.hbar;

    Moments m;

    // Position moments from the total density.
    double w = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = (std::norm(s.a[i]) + std::norm(s.b[i])) * dz;
        w += d;
        m.mean_z += d * g.z()[i];
    }
    m.mean_z /= w;
    for (int i = 0; i < n; ++i) {
        const double d = (std::norm(s.a[i]) + std::norm(s.b[i])) * dz;
        const double u = g.z()[i] - m.mean_z;
        m.var_z += d * u * u;
    }
    m.var_z /= w;

    // Momentum moments from the spectral densities.
    SpectralTransform ft(n);
    Field fa = s.a, fb = s.b;
    ft.forward(fa);
    ft.forward(fb);
    const double dp = hbar * g.dk();
    const double density_scale = dz * dz / (2.0 * std::numbers::pi * hbar);
    double wp = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = (std::norm(fa[i]) + std::norm(fb[i])) * density_scale * dp;
        wp += d;
        m.mean_p += d * hbar * g.wavenumbers()[i];
    }
    m.mean_p /= wp;
    for (int i = 0; i < n; ++i) {
        const double d = (std::norm(fa[i]) + std::norm(fb[i])) * density_scale * dp;
        const double u = hbar * g.wavenumbers()[i] - m.mean_p;
        m.var_p += d * u * u;
    }
    m.var_p /= wp;

    // Symmetrized covariance via the spectral momentum operator:
    // cov = Re <psi| (z - <z>)(p - <p>) |psi>.
    for (int i = 0; i < n; ++i) {
        fa[i] *= hbar * g.wavenumbers()[i];
        fb[i] *= hbar * g.wavenumbers()[i];
    }
    ft.inverse(fa);
    ft.inverse(fb);
    double cov = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = g.z()[i] - m.mean_z;
        cov += u * (std::conj(s.a[i]) * (fa[i] - m.mean_p * s.a[i])).real();
        cov += u * (std::conj(s.b[i]) * (fb[i] - m.mean_p * s.b[i])).real();
    }
    m.cov_zp = cov * dz;

    return m;
}

Complex overlap(const Spinor& x, const Spinor& y) {
    if (!x.grid.same_lattice(y.grid))
        throw std::invalid_argument("overlap: spinors live on different grids");
    Complex sum{0.0, 0.0};
    for (int i = 0; i < x.grid.n(); ++i) {
        sum += std::conj(x.a[i]) * y.a[i] + std::conj(x.b[i]) * y.b[i];
    }
    return sum * x.grid.dz();
}

Spinor translate(const Spinor& s, double shift) {
    Spinor out = s;
    SpectralTransform ft(s.grid.n());
    ft.forward(out.a);
    ft.forward(out.b);
    for (int i = 0; i < s.grid.n(); ++i) {
        const Complex phase = std::exp(Complex{0.0, -s.grid.wavenumbers()[i] * shift});
        out.a[i] *= phase;
        out.b[i] *= phase;
    }
    ft.inverse(out.a);
    ft.inverse(out.b);
    return out;
}

std::pair<double, double> populations(const Spinor& s) {
    double pa = 0.0, pb = 0.0;
    for (const auto& v : s.a) pa += std::norm(v);
    for (const auto& v : s.b) pb += std::norm(v);
    return {pa * s.grid.dz(), pb * s.grid.dz()};
}

Distribution measure_distribution(const Spinor& s, Basis basis, bool per_state) {
    require_normalized(s, "measure_distribution");
    const Grid& g = s.grid;
    const int n = g.n();

    Distribution d;
    d.basis = basis;

    if (basis == Basis::population) {
        const auto [pa, pb] = populations(s);
        d.per_state = false;
        d.outcomes = {0.5, -0.5}; // S_z eigenvalues of |a>, |b>
        d.mass = {pa, pb};
        d.bin_width = 1.0;
        return d;
    }

    d.per_state = per_state;
    if (basis == Basis::position) {
        d.bin_width = g.dz();
        if (per_state) {
            d.outcomes.reserve(2 * n);
            d.mass.reserve(2 * n);
            for (int i = 0; i < n; ++i) {
                d.outcomes.push_back(g.z()[i]);
                d.mass.push_back(std::norm(s.a[i]));
            }
            for (int i = 0; i < n; ++i) {
                d.outcomes.push_back(g.z()[i]);
                d.mass.push_back(std::norm(s.b[i]));
            }
        } else {
            d.outcomes = g.z();
            d.mass.resize(n);
            for (int i = 0; i < n; ++i) d.mass[i] = std::norm(s.a[i]) + std::norm(s.b[i]);
        }
        return d;
    }

    // Momentum basis: spectral densities resorted to monotone p.
    const double hbar = s.params.hbar;
    SpectralTransform ft(n);
    Field fa = s.a, fb = s.b;
    ft.forward(fa);
    ft.forward(fb);
    const double density_scale = g.dz() * g.dz() / (2.0 * std::numbers::pi * hbar);
    d.bin_width = hbar * g.dk();
    const auto& order = g.ascending_order();
    auto push_block = [&](const Field& f) {
        for (int j = 0; j < n; ++j) {
            const int i = order[j];
            d.outcomes.push_back(hbar * g.wavenumbers()[i]);
            d.mass.push_back(std::norm(f[i]) * density_scale);
        }
    };
    if (per_state) {
        d.outcomes.reserve(2 * n);
        d.mass.reserve(2 * n);
        push_block(fa);
        push_block(fb);
    } else {
        d.outcomes.reserve(n);
        d.mass.reserve(n);
        for (int j = 0; j < n; ++j) {
            const int i = order[j];
            d.outcomes.push_back(hbar * g.wavenumbers()[i]);
            d.mass.push_back((std::norm(fa[i]) + std::norm(fb[i])) * density_scale);
        }
    }
    return d;
}

} // namespace matterwave
