#include "matterwave/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace matterwave {

double fq_semiclassical(double k0, double t_pi) {
    const double a = k0 * t_pi * t_pi;
    return a * a;
}

double dg_for_phase(double k0, double time, double fallback_time) {
    const double t = std::max(std::abs(time), std::abs(fallback_time));
    if (t <= 0.0 || k0 <= 0.0)
        throw std::invalid_argument("dg_for_phase: need positive k0 and a time scale");
    return kDgTargetPhase / (k0 * t * t);
}

double qfi_free_analytic(double T, const Moments& m, const PhysicalParams& p) {
    const double h2 = p.hbar * p.hbar;
    const double T2 = T * T;
    return (T2 * T2 / h2) * m.var_p + (4.0 * p.mass * p.mass * T2 / h2) * m.var_z +
           (4.0 * p.mass * T2 * T / h2) * m.cov_zp;
}

double qfi_kc_analytic(double T1, double T2, const Moments& m, const PhysicalParams& p) {
    if (T1 < 0.0 || T2 < 0.0) throw std::invalid_argument("qfi_kc_analytic: negative time");
    const double T = T1 + T2;
    const double u = T * T - 2.0 * T2 * T2;
    return qfi_free_analytic(T, m, p) + 0.25 * p.k0 * p.k0 * u * u;
}

double optimal_quadrature_cfi(const Moments& evolved, double t, const PhysicalParams& p) {
    // G0'(t) = (t/hbar)(m z - t p / 2) evaluated on the evolved state.
    const double t2 = t * t;
    const double h2 = p.hbar * p.hbar;
    return (4.0 * t2 / h2) * (p.mass * p.mass * evolved.var_z + 0.25 * t2 * evolved.var_p -
                              p.mass * t * evolved.cov_zp);
}

double contrast_analytic(double T1, double T2, double sigma, const PhysicalParams& p) {
    if (sigma <= 0.0) throw std::invalid_argument("contrast_analytic: sigma must be positive");
    const double u = p.hbar * p.k0 * (T2 - T1) / (p.mass * sigma);
    return std::exp(-0.25 * u * u);
}

double cfi_population_analytic(double T1, double T2, double sigma, double g,
                               const PhysicalParams& p) {
    const double T = T1 + T2;
    const double lever = 0.5 * T * T - T1 * T1;
    const double phi_f = p.hbar * p.k0 * p.k0 * (T2 - T1) / (2.0 * p.mass);
    const double phi_g = p.k0 * g * lever;
    const double alpha = phi_f - phi_g; // symmetric Gaussian: contrast phase is zero
    const double c = contrast_analytic(T1, T2, sigma, p);
    const double c2 = c * c;
    const double s = std::sin(alpha), co = std::cos(alpha);
    const double denom = 1.0 - c2 * s * s;
    if (denom <= 0.0) return 0.0; // |C| = 1 at quadrature: no population information
    return c2 * co * co / denom * p.k0 * p.k0 * lever * lever;
}

double qfi_from_states(const Spinor& minus, const Spinor& center, const Spinor& plus,
                       double dg) {
    if (dg <= 0.0) throw std::invalid_argument("qfi_from_states: dg must be positive");
    if (!minus.grid.same_lattice(center.grid) || !plus.grid.same_lattice(center.grid))
        throw std::invalid_argument("qfi_from_states: grid mismatch");

    const double inv = 1.0 / (2.0 * dg);
    const double dz = center.grid.dz();
    double dd = 0.0;
    Complex cd{0.0, 0.0};
    for (std::size_t i = 0; i < center.a.size(); ++i) {
        const Complex da = (plus.a[i] - minus.a[i]) * inv;
        const Complex db = (plus.b[i] - minus.b[i]) * inv;
        dd += std::norm(da) + std::norm(db);
        cd += std::conj(center.a[i]) * da + std::conj(center.b[i]) * db;
    }
    dd *= dz;
    cd *= dz;
    return 4.0 * (dd - std::norm(cd));
}

FisherEstimate qfi_numeric(const std::function<Spinor(double)>& run, double dg) {
    if (dg <= 0.0) throw std::invalid_argument("qfi_numeric: dg must be positive");
    const Spinor center = run(0.0);
    const double coarse = qfi_from_states(run(-dg), center, run(dg), dg);
    const double fine = qfi_from_states(run(-0.5 * dg), center, run(0.5 * dg), 0.5 * dg);

    FisherEstimate est;
    est.value = fine;
    est.method = FisherEstimate::Method::finite_difference;
    est.dg = 0.5 * dg;
    est.convergence_error =
        fine != 0.0 ? std::abs(coarse - fine) / std::abs(fine) : std::abs(coarse - fine);
    est.flagged = est.convergence_error > kConvergenceFlagLimit;
    return est;
}

double cfi_from_distributions(const Distribution& minus, const Distribution& center,
                              const Distribution& plus, double dg, double floor) {
    if (dg <= 0.0) throw std::invalid_argument("cfi_from_distributions: dg must be positive");
    if (minus.mass.size() != center.mass.size() || plus.mass.size() != center.mass.size())
        throw std::invalid_argument("cfi_from_distributions: outcome spaces differ");

    double peak = 0.0;
    for (double m : center.mass) peak = std::max(peak, m);
    const double cut = floor * peak;

    const double inv = 1.0 / (2.0 * dg);
    double sum = 0.0;
    for (std::size_t i = 0; i < center.mass.size(); ++i) {
        const double p = center.mass[i];
        if (p <= cut) continue;
        const double dp = (plus.mass[i] - minus.mass[i]) * inv;
        sum += dp * dp / p;
    }
    return sum * center.bin_width;
}

FisherEstimate cfi_distribution(const std::function<Distribution(double)>& run, double dg,
                                double floor) {
    if (dg <= 0.0) throw std::invalid_argument("cfi_distribution: dg must be positive");
    const Distribution center = run(0.0);
    const Distribution m1 = run(-dg), p1 = run(dg);
    const Distribution m2 = run(-0.5 * dg), p2 = run(0.5 * dg);

    const double coarse = cfi_from_distributions(m1, center, p1, dg, floor);
    const double fine = cfi_from_distributions(m2, center, p2, 0.5 * dg, floor);
    const double fine_floor10 = cfi_from_distributions(m2, center, p2, 0.5 * dg, 10.0 * floor);

    FisherEstimate est;
    est.value = fine;
    est.method = FisherEstimate::Method::finite_difference;
    est.dg = 0.5 * dg;
    est.convergence_error =
        fine != 0.0 ? std::abs(coarse - fine) / std::abs(fine) : std::abs(coarse - fine);
    est.floor_sensitivity = fine != 0.0 ? std::abs(fine_floor10 - fine) / std::abs(fine) : 0.0;
    est.flagged = est.convergence_error > kConvergenceFlagLimit ||
                  est.floor_sensitivity > kFloorFlagLimit;
    return est;
}

Distribution convolve_resolution(const Distribution& d, double sigma_res) {
    if (d.basis == Basis::population)
        throw std::invalid_argument("convolve_resolution: position or momentum basis required");
    if (sigma_res < 0.0)
        throw std::invalid_argument("convolve_resolution: sigma_res must be >= 0");
    if (sigma_res == 0.0) return d;

    const std::size_t block = d.block_size();
    const long half = static_cast<long>(std::ceil(6.0 * sigma_res / d.bin_width));
    if (2 * half + 1 > static_cast<long>(block))
        throw std::invalid_argument("convolve_resolution: kernel wider than the domain");

    std::vector<double> kernel(2 * half + 1);
    double wsum = 0.0;
    for (long j = -half; j <= half; ++j) {
        const double u = j * d.bin_width / sigma_res;
        kernel[j + half] = std::exp(-0.5 * u * u);
        wsum += kernel[j + half];
    }
    for (double& w : kernel) w /= wsum;

    Distribution out = d;
    std::fill(out.mass.begin(), out.mass.end(), 0.0);
    // Scatter form: each bin spreads its mass through the kernel, so the
    // total is conserved up to the (edge-monitored) boundary tails.
    for (std::size_t b = 0; b < d.block_count(); ++b) {
        const std::size_t base = b * block;
        for (std::size_t i = 0; i < block; ++i) {
            const double m = d.mass[base + i];
            if (m == 0.0) continue;
            for (long j = -half; j <= half; ++j) {
                const long t = static_cast<long>(i) + j;
                if (t < 0 || t >= static_cast<long>(block)) continue;
                out.mass[base + t] += m * kernel[j + half];
            }
        }
    }
    return out;
}

double shift_cfi_oracle(const Distribution& d, double floor) {
    if (d.basis == Basis::population)
        throw std::invalid_argument("shift_cfi_oracle: position or momentum basis required");

    double peak = 0.0;
    for (double m : d.mass) peak = std::max(peak, m);
    const double cut = floor * peak;

    const std::size_t block = d.block_size();
    const double inv = 1.0 / (2.0 * d.bin_width);
    double sum = 0.0;
    for (std::size_t b = 0; b < d.block_count(); ++b) {
        const std::size_t base = b * block;
        for (std::size_t i = 1; i + 1 < block; ++i) {
            const double p = d.mass[base + i];
            if (p <= cut) continue;
            const double dp = (d.mass[base + i + 1] - d.mass[base + i - 1]) * inv;
            sum += dp * dp / p;
        }
    }
    return sum * d.bin_width;
}

} // namespace matterwave
