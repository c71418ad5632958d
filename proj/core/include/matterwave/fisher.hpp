#pragma once

#include <functional>

#include "matterwave/distribution.hpp"
#include "matterwave/spinor.hpp"

namespace matterwave {

// Carrier for a single Fisher-information value in raw units of
// 1/acceleration^2. Reporting layers normalise by k0^2 t_pi^4.
struct FisherEstimate {
    enum class Method { analytic, finite_difference };

    double value = 0.0;
    Method method = Method::finite_difference;
    double dg = 0.0;                // step the reported value was computed at
    double convergence_error = 0.0; // |F(dg) - F(dg/2)| / |F(dg/2)|
    double floor_sensitivity = 0.0; // CFI only: relative move under a 10x floor change
    bool flagged = false;
};

inline constexpr double kDefaultProbabilityFloor = 1e-12;
inline constexpr double kDgTargetPhase = 1e-3; // target accrued phase k0*dg*t^2
inline constexpr double kConvergenceFlagLimit = 1e-2;
inline constexpr double kFloorFlagLimit = 5e-3;

// Semiclassical benchmark k0^2 t_pi^4.
double fq_semiclassical(double k0, double t_pi);

// Step size such that the largest accrued phase k0*dg*t^2 is kDgTargetPhase.
// fallback_time guards the t -> 0 limit.
double dg_for_phase(double k0, double time, double fallback_time);

// Free-fall QFI 4 Var(G0(T)) expanded in the input-state moments:
//   (T^4/hbar^2) Var(p) + (4 m^2 T^2/hbar^2) Var(z) + (4 m T^3/hbar^2) Cov.
double qfi_free_analytic(double T, const Moments& m, const PhysicalParams& p);

// Interferometer QFI 4 Var(G0(T)) + k0^2 (T^2 - 2 T2^2)^2 / 4, T = T1 + T2.
double qfi_kc_analytic(double T1, double T2, const Moments& m, const PhysicalParams& p);

// 4 Var(G0'(t)) evaluated with the moments of the freely evolved state;
// equals 1/Var(Q) for the minimal-variance conjugate quadrature Q of a
// Gaussian state.
double optimal_quadrature_cfi(const Moments& evolved, double t, const PhysicalParams& p);

// |C| = exp[-hbar^2 k0^2 (T2-T1)^2 / (4 m^2 sigma^2)] for a Gaussian input.
double contrast_analytic(double T1, double T2, double sigma, const PhysicalParams& p);

// Closed-form population CFI
//   |C|^2 cos^2(alpha) / (1 - |C|^2 sin^2(alpha)) * k0^2 (T^2/2 - T1^2)^2
// with alpha = phi_f - phi_g at the maximum-sensitivity pulse phases.
double cfi_population_analytic(double T1, double T2, double sigma, double g,
                               const PhysicalParams& p);

// QFI from finite differences: d = (plus - minus)/(2 dg),
// F = 4(<d|d> - |<center|d>|^2). Gauge invariant by construction.
double qfi_from_states(const Spinor& minus, const Spinor& center, const Spinor& plus,
                       double dg);

FisherEstimate qfi_numeric(const std::function<Spinor(double)>& run, double dg);

// CFI quadrature sum bin_width * (dP/dg)^2 / P over bins with
// P > floor * max(P).
double cfi_from_distributions(const Distribution& minus, const Distribution& center,
                              const Distribution& plus, double dg,
                              double floor = kDefaultProbabilityFloor);

FisherEstimate cfi_distribution(const std::function<Distribution(double)>& run, double dg,
                                double floor = kDefaultProbabilityFloor);

// Detector blur: per-block convolution with a normalised Gaussian kernel
// truncated at 6 sigma_res. sigma_res = 0 is the identity.
Distribution convolve_resolution(const Distribution& d, double sigma_res);

// Shift information integral (dP/dlambda)^2 / P; 1/Var for a Gaussian density.
double shift_cfi_oracle(const Distribution& d, double floor = kDefaultProbabilityFloor);

} // namespace matterwave
