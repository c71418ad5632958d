// Acceptance suite: end-to-end checks of the simulator against its pinned
// sensitivity targets, one PASS/FAIL line per criterion.
//
//   --tier full   production desk-scale parameters (default)
//   --tier ci     reduced t_pi smoke tier with the same relative tolerances
//
// Exit status is the number of failed criteria.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "matterwave/fft.hpp"
#include "matterwave/fisher.hpp"
#include "matterwave/scan.hpp"
#include "matterwave/sequence.hpp"

using namespace matterwave;

namespace {

constexpr double pi = std::numbers::pi;
const PhysicalParams P{};

struct Tier {
    const char* name;
    double t_pi;
    int grid_n;
    double z_min, z_max;
    double sigma;
    int scan_points;
    int trap_points;
    int ramsey_points;
};

constexpr Tier kFullTier{"full", 100.0, 8192, -512.0, 768.0, 10.0, 200, 400, 51};
constexpr Tier kCiTier{"ci", 20.0, 2048, -128.0, 192.0, 10.0, 100, 200, 51};

struct Reporter {
    int failures = 0;

    void line(int criterion, bool ok, const std::string& what) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << criterion << ": " << what
                  << "\n";
        if (!ok) ++failures;
    }
};

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& msg) {
        if (!cond) {
            ok = false;
            detail << "  FAILED: " << msg << "\n";
        }
    }
};

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

bool within(double value, double target, double rel) {
    return std::abs(value - target) <= rel * std::abs(target);
}

ScanConfig base_config(const Tier& tier, Preset preset) {
    ScanConfig cfg;
    cfg.preset = preset;
    cfg.grid_n = tier.grid_n;
    cfg.grid_z_min = tier.z_min;
    cfg.grid_z_max = tier.z_max;
    cfg.sigma = tier.sigma;
    cfg.t_pi = tier.t_pi;
    return cfg;
}

// Fisher columns for one measurement time and an arbitrary prepared state.
struct PointColumns {
    double fq = 0.0, fc_pop = 0.0, fc_pos = 0.0, fc_mom = 0.0; // units k0^2 t_pi^4
};

PointColumns eval_point(const Spinor& s0, double t_pi, double t) {
    const double dg = dg_for_phase(P.k0, t, t_pi);
    const double unit = fq_semiclassical(P.k0, t_pi);
    std::array<Spinor, 5> st;
    const std::array<double, 5> mul = {-1.0, -0.5, 0.0, 0.5, 1.0};
    for (std::size_t i = 0; i < st.size(); ++i) {
        st[i] = run_sequence(build_kc(t_pi, t), mul[i] * dg, s0);
    }
    PointColumns out;
    out.fq = qfi_from_states(st[1], st[2], st[3], 0.5 * dg) / unit;
    auto cfi = [&](Basis b, bool per_state) {
        std::array<Distribution, 3> d;
        d[0] = measure_distribution(st[1], b, per_state);
        d[1] = measure_distribution(st[2], b, per_state);
        d[2] = measure_distribution(st[3], b, per_state);
        return cfi_from_distributions(d[0], d[1], d[2], 0.5 * dg) / unit;
    };
    out.fc_pop = cfi(Basis::population, false);
    out.fc_pos = cfi(Basis::position, true);
    out.fc_mom = cfi(Basis::momentum, true);
    return out;
}

// Closed forms at the symmetric point, in units of k0^2 t_pi^4.
double closed_form_fc_mom(const Tier& t) {
    return 1.0 + 8.0 * t.sigma * t.sigma / (t.t_pi * t.t_pi);
}
double closed_form_fc_pos(const Tier& t) {
    const double num = 8.0 * std::pow(t.sigma * t.t_pi * t.t_pi, 2);
    const double den = std::pow(t.sigma * t.sigma, 2) + std::pow(2.0 * t.t_pi, 2);
    return 1.0 + num / den / std::pow(t.t_pi, 4);
}
double closed_form_fq(const Tier& t, const Moments& m) {
    return qfi_kc_analytic(t.t_pi, t.t_pi, m, P) / fq_semiclassical(P.k0, t.t_pi);
}

// Gaussian family exp(-(beta + i gamma) z^2 / 2 sigma^2), normalised.
Spinor make_chirp(const Grid& grid, double sigma, double beta, double gamma) {
    Spinor s;
    s.grid = grid;
    s.params = P;
    s.a.resize(grid.n());
    s.b.assign(grid.n(), Complex{0.0, 0.0});
    const Complex c = Complex{beta, gamma} / (2.0 * sigma * sigma);
    for (int i = 0; i < grid.n(); ++i) {
        const double z = grid.z()[i];
        s.a[i] = std::exp(-c * z * z);
    }
    double nrm = 0.0;
    for (const auto& v : s.a) nrm += std::norm(v);
    nrm = std::sqrt(nrm * grid.dz());
    for (auto& v : s.a) v /= nrm;
    return s;
}

// QCRB bookkeeping shared by all scan-producing criteria.
struct QcrbLedger {
    double worst_ratio = 0.0;
    int points = 0;

    void absorb(const FisherTrace& trace) {
        for (const auto& r : trace.rows) {
            if (!r.fq_numeric) continue;
            const double fq = *r.fq_numeric;
            if (fq <= 1e-12) continue;
            for (const auto& fc : {r.fc_pop, r.fc_pos, r.fc_mom}) {
                if (!fc) continue;
                worst_ratio = std::max(worst_ratio, *fc / fq);
                ++points;
            }
        }
    }
};

} // namespace

int main(int argc, char** argv) {
    Tier tier = kFullTier;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--tier") == 0 && i + 1 < argc) {
            const std::string name = argv[++i];
            if (name == "ci") {
                tier = kCiTier;
            } else if (name == "full") {
                tier = kFullTier;
            } else {
                std::cerr << "unknown tier '" << name << "'\n";
                return 64;
            }
        }
    }
    const bool full = std::string(tier.name) == "full";
    std::cout << "acceptance tier: " << tier.name << " (t_pi = " << tier.t_pi
              << ", grid " << tier.grid_n << " on [" << tier.z_min << ", " << tier.z_max
              << "])\n";

    Reporter report;
    QcrbLedger qcrb;
    const double unit = fq_semiclassical(P.k0, tier.t_pi);
    const Grid grid = make_grid(tier.grid_n, tier.z_min, tier.z_max);
    const Spinor gauss0 = gaussian(grid, P, tier.sigma);
    const Moments gauss_m = moments(gauss0);

    // ---- criterion 1: symmetric-point Fisher columns -----------------------
    {
        Check c;
        ScanConfig cfg = base_config(tier, Preset::kc);
        cfg.times = {2.0 * tier.t_pi};
        const FisherTrace tr = scan(cfg);
        qcrb.absorb(tr);
        const TraceRow& r = tr.rows[0];

        c.require(within(*r.fc_pop, 1.0, 0.01),
                  "FC_pop " + fmt(*r.fc_pop) + " != 1.000 within 1%");
        c.require(within(*r.fc_mom, closed_form_fc_mom(tier), 0.02),
                  "FC_mom " + fmt(*r.fc_mom) + " != " + fmt(closed_form_fc_mom(tier)) +
                      " within 2%");
        c.require(within(*r.fc_pos, closed_form_fc_pos(tier), 0.005),
                  "FC_pos " + fmt(*r.fc_pos) + " != " + fmt(closed_form_fc_pos(tier)) +
                      " within 0.5%");
        c.require(within(*r.fq_numeric, closed_form_fq(tier, gauss_m), 0.005),
                  "FQ " + fmt(*r.fq_numeric) + " != " + fmt(closed_form_fq(tier, gauss_m)) +
                      " within 0.5%");
        if (full) {
            c.require(within(*r.fc_mom, 1.08, 0.02), "FC_mom not 1.08 within 2%");
            c.require(within(*r.fc_pos, 1.016, 0.005), "FC_pos not 1.016 within 0.5%");
            c.require(within(*r.fq_numeric, 1.16, 0.005), "FQ not 1.16 within 0.5%");
        }
        report.line(1, c.ok,
                    "symmetric point: FC_pop=" + fmt(*r.fc_pop) + " FC_mom=" + fmt(*r.fc_mom) +
                        " FC_pos=" + fmt(*r.fc_pos) + " FQ=" + fmt(*r.fq_numeric));
        std::cout << c.detail.str();
    }

    // ---- criterion 2: closed-form vs finite-difference population CFI ------
    {
        Check c;
        ScanConfig cfg = base_config(tier, Preset::kc);
        cfg.times = linspace(0.0, 2.0 * tier.t_pi, tier.scan_points);
        cfg.bases = {Basis::population};
        const FisherTrace tr = scan(cfg);
        qcrb.absorb(tr);

        int dead_zone = 0, compared = 0;
        double worst = 0.0, worst_fq = 0.0;
        for (const auto& r : tr.rows) {
            const auto w = kc_timing(tier.t_pi, r.t);
            const double analytic =
                cfi_population_analytic(w.t1, w.t2, tier.sigma, 0.0, P) / unit;
            const double numeric = *r.fc_pop;
            if (analytic > 0.01 || numeric > 0.01) {
                ++compared;
                const double rel = std::abs(numeric - analytic) / std::max(analytic, numeric);
                worst = std::max(worst, rel);
            } else {
                ++dead_zone;
            }
            if (*r.fq_analytic > 0.0) {
                worst_fq = std::max(worst_fq,
                                    std::abs(*r.fq_numeric - *r.fq_analytic) / *r.fq_analytic);
            }
        }
        c.require(worst <= 0.01, "worst relative deviation " + fmt(worst) + " > 1%");
        c.require(dead_zone > 0, "scan never entered the near-zero contrast region");
        c.require(compared > 0, "scan never produced a comparable value");
        c.require(worst_fq <= 0.005,
                  "QFI numeric vs closed form deviates by " + fmt(worst_fq) + " > 0.5%");
        report.line(2, c.ok,
                    "population CFI analytic vs numeric: worst rel dev " + fmt(worst) + " over " +
                        fmt(compared) + " points, " + fmt(dead_zone) + " dead-zone points");
        std::cout << c.detail.str();
    }

    // ---- criterion 3: contrast law ------------------------------------------
    {
        Check c;
        double worst = 0.0;
        for (int i = 0; i <= 20; ++i) {
            const double dt = tier.t_pi * i / 20.0;
            const double shift = P.hbar * P.k0 * dt / P.mass;
            const double numeric = std::abs(overlap(gauss0, translate(gauss0, shift)));
            const double analytic = contrast_analytic(tier.t_pi, tier.t_pi + dt, tier.sigma, P);
            worst = std::max(worst, std::abs(numeric - analytic));
        }
        c.require(worst <= 1e-6, "worst |contrast error| " + fmt(worst) + " > 1e-6");
        report.line(3, c.ok, "contrast law: worst abs deviation " + fmt(worst));
        std::cout << c.detail.str();
    }

    // ---- criterion 4: chirped input saturates the QCRB in position ---------
    {
        Check c;
        PointColumns chirped;
        double fq_ratio = 0.0;
        if (full) {
            ScanConfig cfg = base_config(tier, Preset::kc_chirped);
            cfg.times = {2.0 * tier.t_pi};
            const FisherTrace tr = scan(cfg);
            qcrb.absorb(tr);
            const TraceRow& r = tr.rows[0];
            chirped.fq = *r.fq_numeric;
            chirped.fc_pos = *r.fc_pos;
            chirped.fc_mom = *r.fc_mom;
            fq_ratio = *r.fc_pos / *r.fq_numeric;
        } else {
            // The stock chirp focuses at the production symmetric point; for
            // the smoke tier solve the matching condition for gamma so the
            // same physics claim is tested at this t_pi.
            const double a = 4.0 * tier.t_pi / (tier.sigma * tier.sigma);
            const double b = -6.0;
            const double cc = tier.t_pi / (4.0 * tier.sigma * tier.sigma) +
                              2.0 * tier.sigma * tier.sigma / tier.t_pi;
            const double disc = b * b - 4.0 * a * cc;
            c.require(disc >= 0.0, "no matching chirp at this tier");
            const double gamma = (-b - std::sqrt(std::max(disc, 0.0))) / (2.0 * a);
            const Spinor s0 = make_chirp(grid, tier.sigma, 0.25, gamma);
            chirped = eval_point(s0, tier.t_pi, 2.0 * tier.t_pi);
            fq_ratio = chirped.fc_pos / chirped.fq;
        }

        ScanConfig plain = base_config(tier, Preset::kc);
        plain.times = {2.0 * tier.t_pi};
        plain.bases = {Basis::momentum};
        plain.want_fq_numeric = false;
        const double plain_mom = *scan(plain).rows[0].fc_mom;

        c.require(fq_ratio >= 0.98, "FC_pos/FQ " + fmt(fq_ratio) + " below 0.98");
        c.require(chirped.fc_mom < plain_mom,
                  "chirped FC_mom " + fmt(chirped.fc_mom) + " not below plain " + fmt(plain_mom));
        report.line(4, c.ok,
                    "chirped input: FC_pos/FQ=" + fmt(fq_ratio) + ", FC_mom " +
                        fmt(chirped.fc_mom) + " < plain " + fmt(plain_mom));
        std::cout << c.detail.str();
    }

    // ---- criterion 5: trap-assisted readout saturates in both bases --------
    {
        Check c;
        ScanConfig cfg = base_config(tier, Preset::trap);
        const double period = 2.0 * pi / cfg.effective_trap_omega();
        cfg.times = linspace(2.0 * tier.t_pi, 2.0 * tier.t_pi + period, tier.trap_points);
        const FisherTrace tr = scan(cfg);
        qcrb.absorb(tr);

        double fq_min = 1e300, fq_max = 0.0;
        double pos_max = 0.0, pos_min = 1e300, mom_max = 0.0, mom_min = 1e300;
        for (const auto& r : tr.rows) {
            fq_min = std::min(fq_min, *r.fq_numeric);
            fq_max = std::max(fq_max, *r.fq_numeric);
            pos_max = std::max(pos_max, *r.fc_pos);
            pos_min = std::min(pos_min, *r.fc_pos);
            mom_max = std::max(mom_max, *r.fc_mom);
            mom_min = std::min(mom_min, *r.fc_mom);
        }
        c.require(fq_max - fq_min <= 0.005 * fq_min,
                  "FQ drifts by " + fmt((fq_max - fq_min) / fq_min) + " > 0.5%");
        c.require(pos_max >= 0.97 * fq_max, "max FC_pos " + fmt(pos_max) + " < 0.97 FQ");
        c.require(mom_max >= 0.97 * fq_max, "max FC_mom " + fmt(mom_max) + " < 0.97 FQ");
        c.require(within(pos_min, 1.0, 0.05), "min FC_pos " + fmt(pos_min) + " not 1.0 within 5%");
        c.require(within(mom_min, 1.0, 0.05), "min FC_mom " + fmt(mom_min) + " not 1.0 within 5%");
        report.line(5, c.ok,
                    "trap readout: FC_pos in [" + fmt(pos_min) + ", " + fmt(pos_max) +
                        "], FC_mom in [" + fmt(mom_min) + ", " + fmt(mom_max) + "], FQ=" +
                        fmt(fq_max));
        std::cout << c.detail.str();
    }

    // ---- criterion 6: mirrorless configuration ------------------------------
    {
        Check c;
        ScanConfig point = base_config(tier, Preset::ramsey);
        point.times = {2.0 * tier.t_pi};
        const FisherTrace pt = scan(point);
        qcrb.absorb(pt);
        const TraceRow& r = pt.rows[0];
        const double fq_expected =
            qfi_kc_analytic(2.0 * tier.t_pi, 0.0, gauss_m, P) / unit;
        c.require(within(*r.fq_numeric, fq_expected, 0.01),
                  "FQ " + fmt(*r.fq_numeric) + " != " + fmt(fq_expected) + " within 1%");
        c.require(*r.fc_mom <= *r.fq_numeric * 1.02, "FC_mom violates the QCRB margin");
        if (full) {
            c.require(*r.fc_mom >= 4.0 && *r.fc_mom <= 4.5,
                      "FC_mom " + fmt(*r.fc_mom) + " outside [4.0, 4.5]");
        } else {
            c.require(*r.fc_mom >= 0.93 * *r.fq_numeric,
                      "FC_mom " + fmt(*r.fc_mom) + " below 0.93 FQ");
        }

        ScanConfig sweep = base_config(tier, Preset::ramsey);
        sweep.times = linspace(2.0 * tier.t_pi / tier.ramsey_points, 2.0 * tier.t_pi,
                               tier.ramsey_points);
        sweep.bases = {Basis::population, Basis::position};
        const FisherTrace tr = scan(sweep);
        qcrb.absorb(tr);
        double pop_max = 0.0, pos_max = 0.0;
        for (const auto& row : tr.rows) {
            pop_max = std::max(pop_max, *row.fc_pop);
            pos_max = std::max(pos_max, *row.fc_pos);
        }
        // The position bound scales with the ballistic envelope information,
        // which the tier's time window sets; at production parameters the
        // bound is the plain 0.05.
        const double var_zt = gauss_m.var_z +
                              std::pow(2.0 * tier.t_pi, 2) * gauss_m.var_p / (P.mass * P.mass);
        const double envelope = std::pow(2.0 * tier.t_pi * tier.t_pi, 2) / var_zt / unit;
        const double pos_bound = std::max(0.05, 1.5 * envelope);
        c.require(pop_max < 0.05, "FC_pop max " + fmt(pop_max) + " >= 0.05");
        c.require(pos_max < pos_bound,
                  "FC_pos max " + fmt(pos_max) + " >= bound " + fmt(pos_bound));
        report.line(6, c.ok,
                    "mirrorless: FQ=" + fmt(*r.fq_numeric) + " FC_mom=" + fmt(*r.fc_mom) +
                        " FC_pop<=" + fmt(pop_max) + " FC_pos<=" + fmt(pos_max));
        std::cout << c.detail.str();
    }

    // ---- criterion 7: detection-resolution sweep ----------------------------
    {
        Check c;
        const double delta_p = 1.0 / (std::sqrt(2.0) * tier.sigma); // hbar k0 units
        std::vector<double> ladder = {0.0,   0.1 * delta_p, 0.25 * delta_p, 0.5 * delta_p,
                                      delta_p, 2.0 * delta_p, 0.2,           0.5,
                                      1.0,   2.0};
        std::sort(ladder.begin(), ladder.end());

        ScanConfig kc_cfg = base_config(tier, Preset::kc);
        const ResolutionSweep kc_sweep = resolution_sweep(kc_cfg, ladder);
        ScanConfig rm_cfg = base_config(tier, Preset::ramsey);
        const ResolutionSweep rm_sweep = resolution_sweep(rm_cfg, ladder);

        auto monotone = [](const ResolutionSweep& s) {
            for (std::size_t i = 1; i < s.rows.size(); ++i) {
                if (s.rows[i].fc_mom > s.rows[i - 1].fc_mom * (1.0 + 1e-9)) return false;
            }
            return true;
        };
        c.require(monotone(kc_sweep), "kc sweep not monotone nonincreasing");
        c.require(monotone(rm_sweep), "mirrorless sweep not monotone nonincreasing");

        auto value_at = [&](const ResolutionSweep& s, double sp) {
            for (const auto& row : s.rows) {
                if (std::abs(row.sigma_p - sp) < 1e-12) return row.fc_mom;
            }
            return -1.0;
        };
        const double kc0 = value_at(kc_sweep, 0.0);
        const double kc_half = value_at(kc_sweep, 0.5 * delta_p);
        const double kc_end = value_at(kc_sweep, 2.0);
        const double rm0 = value_at(rm_sweep, 0.0);
        const double rm_half = value_at(rm_sweep, 0.5 * delta_p);
        const double rm_end = value_at(rm_sweep, 2.0);

        if (full) {
            c.require(kc_half >= 0.95 * kc0,
                      "kc value at 0.5 dp dropped to " + fmt(kc_half / kc0));
        } else {
            // same physics, tier-scaled: the population share of the kc CFI
            // sets the retention; compare against the closed form.
            const double s_frac = closed_form_fc_mom(tier) - 1.0;
            const double blur = gauss_m.var_p /
                                (gauss_m.var_p + std::pow(0.5 * delta_p, 2));
            const double expected = (1.0 + s_frac * blur) / (1.0 + s_frac);
            c.require(within(kc_half / kc0, expected, 0.02),
                      "kc retention " + fmt(kc_half / kc0) + " != closed form " + fmt(expected));
        }
        c.require(within(kc_end, 1.0, 0.05),
                  "kc value at sigma_p = 2 is " + fmt(kc_end) + ", not 1.0 within 5%");
        c.require(rm_end < 0.05, "mirrorless tail " + fmt(rm_end) + " >= 0.05");
        c.require(rm_half / rm0 < 0.5,
                  "mirrorless retention at 0.5 dp is " + fmt(rm_half / rm0) +
                      ", expected heavy degradation");
        report.line(7, c.ok,
                    "resolution sweep: kc " + fmt(kc0) + " -> " + fmt(kc_end) +
                        ", mirrorless " + fmt(rm0) + " -> " + fmt(rm_end));
        std::cout << c.detail.str();
    }

    // ---- criterion 8: finite pulse durations --------------------------------
    {
        Check c;
        ScanConfig cfg = base_config(tier, Preset::kc);
        const std::vector<double> deltas = {1e-3 * tier.t_pi, 0.1 * tier.t_pi, 0.2 * tier.t_pi,
                                            0.4 * tier.t_pi};
        const PulseDurationSweep sweep = pulse_duration_sweep(cfg, deltas);
        const PulseDurationRow& ref = sweep.rows[0];

        auto max_rel_dev = [&](const PulseDurationRow& row) {
            double worst = 0.0;
            worst = std::max(worst, std::abs(*row.fq - *ref.fq) / *ref.fq);
            worst = std::max(worst, std::abs(*row.fc_pop - *ref.fc_pop) / *ref.fc_pop);
            worst = std::max(worst, std::abs(*row.fc_pos - *ref.fc_pos) / *ref.fc_pos);
            worst = std::max(worst, std::abs(*row.fc_mom - *ref.fc_mom) / *ref.fc_mom);
            return worst;
        };

        const double dev_short = max_rel_dev(sweep.rows[1]);
        c.require(dev_short <= 0.01,
                  "delta_t = 1e-3 t_pi deviates by " + fmt(dev_short) + " > 1%");
        double prev = dev_short;
        for (std::size_t i = 2; i < sweep.rows.size(); ++i) {
            const double dev = max_rel_dev(sweep.rows[i]);
            c.require(dev >= prev, "deviation not monotone at delta_t = " +
                                       fmt(sweep.rows[i].delta_t));
            prev = dev;
        }
        c.require(std::abs(sweep.rows.back().sequence_time - 3.6 * tier.t_pi) < 1e-9,
                  "sequence time bookkeeping != 3.6 t_pi");
        report.line(8, c.ok,
                    "finite pulses: dev(1e-3 t_pi)=" + fmt(dev_short) + ", dev(0.4 t_pi)=" +
                        fmt(prev) + ", longest sequence " +
                        fmt(sweep.rows.back().sequence_time / tier.t_pi) + " t_pi");
        std::cout << c.detail.str();
    }

    // ---- criterion 9: always-on property suite ------------------------------
    {
        Check c;

        // norm conservation over 1e4 split steps
        {
            const Grid small = make_grid(256, -64.0, 64.0);
            Spinor s = gaussian(small, P, 10.0);
            s = evolve_split_step(std::move(s), 100.0, PotentialSpec::harmonic(0.5, 0.0), 0.01);
            c.require(std::abs(norm_total(s) - 1.0) <= 1e-10,
                      "norm drift " + fmt(std::abs(norm_total(s) - 1.0)) + " over 1e4 steps");
        }

        // QCRB across every evaluated scan point above
        c.require(qcrb.worst_ratio <= 1.02,
                  "QCRB violated: max FC/FQ = " + fmt(qcrb.worst_ratio));

        // gauge invariance of the numeric QFI; the phase slope is scaled to
        // the step so the O((slope*dg)^2) truncation stays below the budget
        {
            const double t = 2.0 * tier.t_pi;
            const double dg = dg_for_phase(P.k0, t, tier.t_pi);
            const double slope = 2.5e-6 / dg;
            auto run = [&](double g) { return run_sequence(build_kc(tier.t_pi, t), g, gauss0); };
            auto gauged = [&](double g) {
                Spinor s = run(g);
                const Complex phase = std::exp(Complex{0.0, slope * g});
                for (auto& v : s.a) v *= phase;
                for (auto& v : s.b) v *= phase;
                return s;
            };
            const double f0 = qfi_numeric(run, dg).value;
            const double f1 = qfi_numeric(gauged, dg).value;
            c.require(std::abs(f1 - f0) / f0 <= 1e-9,
                      "gauge shift moved QFI by " + fmt(std::abs(f1 - f0) / f0));
        }

        // split-step convergence order on the linear-gravity test
        {
            const Grid small = make_grid(1024, -64.0, 64.0);
            const Spinor s = gaussian(small, P, 10.0);
            const double grav = 0.1, T = 10.0;
            const Spinor exact = apply_ug_analytic(s, T, grav);
            auto err = [&](double dt) {
                const Spinor out = evolve_split_step(s, T, PotentialSpec::linear(grav), dt);
                double sum = 0.0;
                for (int i = 0; i < small.n(); ++i) {
                    sum += std::norm(out.a[i] - exact.a[i]) + std::norm(out.b[i] - exact.b[i]);
                }
                return std::sqrt(sum * small.dz());
            };
            const double ratio = err(0.05) / err(0.025);
            c.require(std::abs(ratio - 4.0) <= 0.5,
                      "convergence factor " + fmt(ratio) + " not 4 +- 0.5");
        }

        // spectral round trip and Parseval
        {
            const Grid small = make_grid(1024, -64.0, 64.0);
            const Spinor s = gaussian(small, P, 10.0, 3.0, 0.4);
            Field f = s.a;
            SpectralTransform ft(small.n());
            double pos = 0.0;
            for (const auto& v : f) pos += std::norm(v);
            ft.forward(f);
            double mom = 0.0;
            for (const auto& v : f) mom += std::norm(v);
            mom /= small.n();
            c.require(std::abs(mom - pos) / pos <= 1e-12,
                      "Parseval defect " + fmt(std::abs(mom - pos) / pos));
            ft.inverse(f);
            double rt = 0.0;
            for (int i = 0; i < small.n(); ++i) rt += std::norm(f[i] - s.a[i]);
            c.require(std::sqrt(rt / pos) <= 1e-12, "round-trip defect");
        }

        report.line(9, c.ok,
                    "property suite: QCRB max FC/FQ = " + fmt(qcrb.worst_ratio) + " over " +
                        fmt(qcrb.points) + " column values");
        std::cout << c.detail.str();
    }

    // ---- criterion 10: published-scale closed-form check --------------------
    {
        Check c;
        const double hbar_si = 1.0545718e-34;
        const double m_rb87 = 1.44316e-25;
        const double k0_si = 1.6e7;
        const NaturalScales nat = natural_units(k0_si, m_rb87, hbar_si);

        const double sigma = 40e-6 / nat.length; // 40 um
        const double t_pi = 0.13 / nat.time;     // 130 ms
        // quoted momentum width 0.18 hbar k0 is the full 1/e width of the
        // density; the rms width is that over 2 sqrt(2)
        const double dp_rms = 0.18 / (2.0 * std::sqrt(2.0));

        Moments m;
        m.var_z = 0.5 * sigma * sigma;
        m.var_p = dp_rms * dp_rms;
        m.cov_zp = 0.0;
        const double ratio =
            qfi_free_analytic(2.0 * t_pi, m, P) / fq_semiclassical(P.k0, t_pi);
        c.require(std::abs(ratio - 0.07) <= 0.01,
                  "4 Var(G0)/F_sc = " + fmt(ratio) + " outside 0.07 +- 0.01");
        report.line(10, c.ok, "published-scale closed form: 4 Var(G0)/F_sc = " + fmt(ratio));
        std::cout << c.detail.str();
    }

    std::cout << (report.failures == 0 ? "ALL CRITERIA PASSED\n"
                                       : std::to_string(report.failures) + " CRITERIA FAILED\n");
    return report.failures;
}
