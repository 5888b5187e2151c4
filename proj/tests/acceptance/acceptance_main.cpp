// Acceptance suite: one pass/fail line per criterion, grouped so criteria
// sharing a long simulation reuse it. Run all with no arguments or a subset
// with --criteria 1,5,6.

#include "supercrit/bessel.hpp"
#include "supercrit/corpus.hpp"
#include "supercrit/euler.hpp"
#include "supercrit/interp.hpp"
#include "supercrit/lab.hpp"
#include "supercrit/lp.hpp"
#include "supercrit/osgood.hpp"
#include "supercrit/patch.hpp"
#include "supercrit/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace supercrit;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = 3.14159265358979323846;

int g_failures = 0;

void record(int criterion, const std::string& name, bool pass, const std::string& detail) {
    std::printf("ACCEPT %02d %-34s %s  %s\n", criterion, name.c_str(), pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string qoi(double value, double limit) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(value=%.3g, limit=%.3g)", value, limit);
    return buf;
}

double rel_l2_diff(const SpectralField& a, const SpectralField& b) {
    SpectralField d = a;
    d -= b;
    return d.l2_norm() / std::max(b.l2_norm(), 1e-300);
}

// --------------------------------------------------------------- 1 & 2 ----

void criterion_1() {
    double worst = 0.0;
    for (int n : {128, 256}) {
        Grid g(n, 2.0 * kPi);
        LPPartition p(g);
        double cover = std::ldexp(1.0, p.j_max());
        for (int ny = -n / 2; ny < n / 2; ++ny) {
            for (int nx = 0; nx <= n / 2; ++nx) {
                double k = g.k_scale() * std::hypot(double(nx), double(ny));
                if (k > cover) continue;
                double sum = p.chi(k);
                for (int j = 0; j <= p.j_max(); ++j) sum += p.phi(std::ldexp(k, -j));
                worst = std::max(worst, std::abs(1.0 - sum));
            }
        }
    }
    record(1, "lp-partition-of-unity", worst <= 1e-12, qoi(worst, 1e-12));
}

double coverage_fraction(const Grid& g) {
    LPPartition p(g);
    return std::min(1.0, p.coverage() / (g.k_scale() * g.dealias_max_freq()));
}

void criterion_2() {
    double worst = 0.0;
    {
        Grid g(128, 2.0 * kPi);
        LPPartition p(g);
        FieldCorpus corpus(g, 100, 2024, -1.0, coverage_fraction(g));
        for (int i = 0; i < 100; ++i) {
            SpectralField f = corpus.field(i);
            SpectralField sum = decompose(f, p).reconstruct();
            sum -= f;
            worst = std::max(worst, sum.l2_norm() / f.l2_norm());
        }
    }
    {
        Grid g(256, 2.0 * kPi);
        LPPartition p(g);
        FieldCorpus corpus(g, 10, 2025, -1.0, coverage_fraction(g));
        for (int i = 0; i < 10; ++i) {
            SpectralField f = corpus.field(i);
            SpectralField sum = decompose(f, p).reconstruct();
            sum -= f;
            worst = std::max(worst, sum.l2_norm() / f.l2_norm());
        }
    }
    record(2, "lp-reconstruction", worst <= 1e-10, qoi(worst, 1e-10));
}

void criterion_3() {
    Grid g(128, 2.0 * kPi);
    LPPartition p(g);
    FieldCorpus corpus(g, 100, 31415, -1.0, coverage_fraction(g));

    double worst_x = 1.0;
    for (int i = 0; i < 100; ++i) {
        SpectralField f = corpus.field(i);
        double x = besov_norms(f, p, 0.5).x_norm;
        double hs = sobolev_norm_direct(f, 0.5);
        worst_x = std::max({worst_x, x / hs, hs / x});
    }
    record(3, "x-norm-vs-sobolev (s=1/2)", worst_x <= 4.0, qoi(worst_x, 4.0));

    double worst_y = 1.0;
    for (double s : {0.25, 0.5, 0.75}) {
        for (int i = 0; i < 100; ++i) {
            SpectralField f = corpus.field(i);
            double y = besov_norms(f, p, s).y_norm;
            double q = holder_quotient_sampled(f, s, 555 + i);
            worst_y = std::max({worst_y, y / q, q / y});
        }
    }
    record(3, "y-norm-vs-holder-quotient", worst_y <= 10.0, qoi(worst_y, 10.0));
}

void criterion_4() {
    // cos(x1) on the standard torus, with both laws
    double worst_mode = 0.0;
    for (Multiplier m : {Multiplier::constant(1.0), Multiplier::iterated_log({1.0})}) {
        SolverConfig sc;
        sc.grid = Grid(256, 2.0 * kPi);
        sc.multiplier = m;
        sc.t_end = 1.0;
        sc.cadence = 0.5;
        sc.track_bkm_integral = false;
        SpectralField mode = make_single_mode(sc.grid, 1, 0);
        worst_mode = std::max(worst_mode, rel_l2_diff(run(sc, mode).final_omega, mode));
    }
    record(4, "stationary-single-mode (t=1)", worst_mode <= 1e-8, qoi(worst_mode, 1e-8));

    // Radial bump: mean-free (no image circulation), roomy torus (kernel
    // tails die before the images), and the iterated-log clamp below the
    // first lattice mode so the sampled symbol is the smooth one.
    double worst_radial = 0.0;
    for (Multiplier m : {Multiplier::constant(1.0), Multiplier::iterated_log({1.0}, 0.05)}) {
        SolverConfig sc;
        sc.grid = Grid(256, 8.0 * kPi);
        sc.multiplier = m;
        sc.t_end = 1.0;
        sc.cadence = 0.5;
        sc.track_bkm_integral = false;
        SpectralField bump = make_radial_bump(sc.grid, 0.6, 1.0);
        worst_radial = std::max(worst_radial, rel_l2_diff(run(sc, bump).final_omega, bump));
    }
    record(4, "stationary-radial (t=1)", worst_radial <= 1e-8, qoi(worst_radial, 1e-8));
}

// two-vortex N=256 run shared by criteria 5, 6, 8
RunResult two_vortex_run() {
    SolverConfig sc;
    sc.grid = Grid(256, 2.0 * kPi);
    sc.multiplier = Multiplier::constant(1.0);
    sc.dt.cfl_safety = 0.5;
    sc.t_end = 5.0;
    sc.cadence = 0.25;
    sc.s_list = {0.5};
    sc.track_bkm_integral = true;
    SpectralField omega0 = make_two_vortex(sc.grid, 4.0, 0.5, 1.8);
    return run(sc, omega0);
}

void criteria_5_6_8() {
    RunResult rr = two_vortex_run();
    const auto& recs = rr.series.records;

    double l2_drift = 0.0, linf_growth = 0.0;
    for (const auto& rec : recs) {
        l2_drift = std::max(l2_drift, std::abs(rec.l2 - recs.front().l2) / recs.front().l2);
        linf_growth = std::max(linf_growth, (rec.linf - recs.front().linf) / recs.front().linf);
    }
    record(5, "two-vortex-l2-conservation", !rr.series.blew_up && l2_drift <= 1e-6,
           qoi(l2_drift, 1e-6));
    record(5, "two-vortex-linf-max-principle", linf_growth <= 1e-3, qoi(linf_growth, 1e-3));

    bool bkm_ok = true;
    double worst_excess = -1e300;
    for (std::size_t i = 1; i < recs.size(); ++i) {
        double dlog = std::log(recs[i].cs_proxy[0]) - std::log(recs[i - 1].cs_proxy[0]);
        double bound = 1.1 * recs[i].bkm_integral + 1e-12;
        worst_excess = std::max(worst_excess, dlog - bound);
        if (dlog > bound) bkm_ok = false;
    }
    record(6, "bkm-interval-consistency", bkm_ok, qoi(worst_excess, 0.0));

    double c_fit = rr.fitted_envelope_constant;
    record(8, "gamma-envelope-fitted-constant", std::isfinite(c_fit) && c_fit <= 1e3,
           qoi(c_fit, 1e3));
}

void criterion_7() {
    // gamma(r) = r: exponential closed form
    double worst_exp = 0.0;
    {
        OsgoodEnvelope env([](double r) { return r; }, 1.0, 1e30);
        double f0 = 2.0, c = 0.5;  // C f0 = 1
        std::vector<double> t;
        for (int i = 0; i <= 400; ++i) t.push_back(5.0 * i / 400.0);
        std::vector<double> curve = env.envelope(f0, c, t);
        for (std::size_t i = 0; i < t.size(); ++i) {
            double exact = f0 * std::exp(t[i]);
            worst_exp = std::max(worst_exp, std::abs(curve[i] - exact) / exact);
        }
    }
    record(7, "osgood-exponential-closed-form", worst_exp <= 1e-6, qoi(worst_exp, 1e-6));

    // Gamma(r) = 1 + Log r: double exponential closed form
    double worst_dexp = 0.0;
    double worst_ode = 0.0;
    {
        GammaSymbol gamma(Multiplier::constant(1.0));
        OsgoodEnvelope env = OsgoodEnvelope::for_gamma_symbol(gamma, 1.0, 1e300);
        double f0 = 5.0, c = 0.4;
        std::vector<double> t;
        for (int i = 0; i <= 2000; ++i) t.push_back(2.0 * i / 2000.0);
        std::vector<double> curve = env.envelope(f0, c, t);
        for (std::size_t i = 0; i < t.size(); ++i) {
            double exact = std::exp((1.0 + std::log(f0)) * std::exp(c * f0 * t[i]) - 1.0);
            worst_dexp = std::max(worst_dexp, std::abs(curve[i] - exact) / exact);
        }
        // residual grid fine enough that rate * dt stays small for the
        // central differences (the curve is doubly exponential)
        std::vector<double> tr;
        for (int i = 0; i <= 4000; ++i) tr.push_back(1.0 * i / 4000.0);
        std::vector<double> curve_r = env.envelope(f0, c, tr);
        for (std::size_t i = 1; i + 1 < tr.size(); ++i) {
            double fd = (curve_r[i + 1] - curve_r[i - 1]) / (tr[i + 1] - tr[i - 1]);
            double rhs = c * f0 * env.gamma(curve_r[i]);
            worst_ode = std::max(worst_ode, std::abs(fd - rhs) / rhs);
        }
    }
    record(7, "osgood-double-exponential", worst_dexp <= 1e-6, qoi(worst_dexp, 1e-6));
    record(7, "osgood-ode-consistency", worst_ode <= 1e-4, qoi(worst_ode, 1e-4));
}

void criterion_9() {
    for (auto [m, tag] :
         {std::pair{Multiplier::constant(1.0), "m1"}, {Multiplier::iterated_log({1.0}), "loglog"}}) {
        Grid g(256, 2.0 * kPi);
        PatchState s = make_circle_patch(g, 1.0, 0.8);
        PatchRunConfig pc;
        pc.multiplier = m;
        pc.t_end = 5.0;
        pc.cadence = 1.0;
        pc.mu = 0.5;
        pc.epsilon_losing = 0.1;
        PatchRunResult pr = run_patch(s, pc);

        double disp = boundary_displacement(s.phi, pr.final_state.phi);
        double cells = disp / g.spacing();
        double area0 = pr.records.front().area;
        double drift = 0.0;
        for (const auto& r : pr.records) drift = std::max(drift, std::abs(r.area - area0) / area0);

        record(9, std::string("circular-patch-boundary-") + tag,
               !pr.blew_up && !pr.regularity_lost && cells < 2.0, qoi(cells, 2.0));
        record(9, std::string("circular-patch-area-") + tag, drift <= 1e-3, qoi(drift, 1e-3));
    }
}

void criterion_10() {
    Grid g(512, 2.0 * kPi);
    const double radius = 0.3, a0 = 1.0;
    PatchState s = make_circle_patch(g, a0, radius);
    VectorField u = patch_velocity(s, Multiplier::constant(1.0));
    const double c = 0.5 * g.length;
    double worst = 0.0;
    for (double r : {0.3 * radius, 0.45 * radius, 0.6 * radius}) {
        double acc = 0.0;
        const int samples = 512;
        for (int i = 0; i < samples; ++i) {
            double a = 2.0 * kPi * i / samples;
            double px = c + r * std::cos(a), py = c + r * std::sin(a);
            acc += -bicubic_sample(u.x, px, py) * std::sin(a) +
                   bicubic_sample(u.y, px, py) * std::cos(a);
        }
        double omega_rot = acc / samples / r;
        worst = std::max(worst, std::abs(omega_rot - a0 / 2.0) / (a0 / 2.0));
    }
    record(10, "rankine-angular-velocity (N=512)", worst <= 0.01, qoi(worst, 0.01));
}

void criterion_11() {
    Multiplier m = Multiplier::iterated_log({1.0});
    Grid g(256, 2.0 * kPi);
    // the exact circle is excluded: its tangential-tangential gradient is
    // identically zero (rigid rotation), so the normalized ratio there is
    // 0/0 noise; the sweep starts at the first genuinely anisotropic shape
    std::vector<double> aspects = {1.25, 1.5, 2.0, 3.0, 4.0};
    std::vector<double> ratios, band_sups;
    const double area_semi = 0.55;  // semi-axes a = s*sqrt(aspect), b = s/sqrt(aspect)
    for (double aspect : aspects) {
        double a = area_semi * std::sqrt(aspect), b = area_semi / std::sqrt(aspect);
        PatchState s = make_ellipse_patch(g, 1.0, a, b);
        TangentialReport rep = tangential_gradient_sup(s, m, 0.5, 77);
        ratios.push_back(rep.normalized_ratio);
        band_sups.push_back(rep.band_grad_sup);
    }
    double rmax = 0.0, rmin = 1e300;
    for (double r : ratios) {
        rmax = std::max(rmax, r);
        rmin = std::min(rmin, r);
    }
    record(11, "tangential-ratio-uniform", rmax / rmin <= 10.0, qoi(rmax / rmin, 10.0));

    bool grows = band_sups.back() > 1.15 * band_sups.front();
    for (std::size_t i = 1; i < band_sups.size(); ++i)
        if (band_sups[i] < 0.97 * band_sups[i - 1]) grows = false;
    std::ostringstream os;
    os << "(band sup " << band_sups.front() << " -> " << band_sups.back() << ")";
    record(11, "band-grad-sup-grows-with-aspect", grows, os.str());
}

void criterion_12() {
    double mu = 1.0;
    bool ok = true;
    double worst_margin = 0.0;

    {
        Grid g(256, 2.0 * kPi);
        PatchState s = make_band_patch(g, 1.0, 1.0);
        const double c = 0.5 * g.length;
        for (double d : {0.03, 0.08}) {
            Vec2 x0{c, c + 1.0 - d};
            std::vector<double> rhos;
            for (double rho = d; rho <= 0.45; rho *= 1.6) rhos.push_back(rho);
            ArcMeasureTable t = arc_measure(s, x0, rhos, mu, 8192);
            for (const auto& row : t.rows) {
                worst_margin = std::max(worst_margin, row.measure / row.bound);
                if (row.measure > 1.05 * row.bound) ok = false;
            }
        }
    }
    {
        Grid g(256, 2.0 * kPi);
        const double radius = 0.8;
        PatchState s = make_circle_patch(g, 1.0, radius);
        const double c = 0.5 * g.length;
        for (double d : {0.04, 0.1}) {
            Vec2 x0{c, c + radius - d};
            std::vector<double> rhos;
            for (double rho = d; rho <= radius / 2.0; rho *= 1.6) rhos.push_back(rho);
            ArcMeasureTable t = arc_measure(s, x0, rhos, mu, 8192);
            for (const auto& row : t.rows) {
                worst_margin = std::max(worst_margin, row.measure / row.bound);
                if (row.measure > 1.05 * row.bound) ok = false;
            }
        }
    }
    record(12, "arc-measure-under-lemma-bound", ok, qoi(worst_margin, 1.05));
}

void criterion_13() {
    std::vector<double> rhos;
    for (int i = 0; i < 25; ++i) rhos.push_back(1e-3 * std::pow(1000.0, i / 24.0));

    Multiplier loglog = Multiplier::iterated_log({1.0});
    KernelTable coarse = compute_radial_kernel(loglog, rhos, 16);
    KernelTable fine = compute_radial_kernel(loglog, rhos, 32);
    double stab = std::abs(fine.majorant_sup - coarse.majorant_sup) / coarse.majorant_sup;
    record(13, "kernel-majorant-stable", std::isfinite(coarse.majorant_sup) && stab <= 0.1,
           qoi(stab, 0.1));

    KernelTable classical = compute_radial_kernel(Multiplier::constant(1.0), rhos, 16);
    double slope_err =
        std::abs(classical.log_slope - (-1.0 / (2.0 * kPi))) / (1.0 / (2.0 * kPi));
    record(13, "kernel-classical-log-slope", slope_err <= 0.01, qoi(slope_err, 0.01));
}

void criterion_14() {
    Multiplier m = Multiplier::iterated_log({1.0});
    const double s = 1.0;
    std::vector<double> slopes = {-1.0, 0.0, 1.0};
    const int count = 200;
    int per_slope = count / int(slopes.size()) + 1;

    // refinement pairs evaluate the SAME continuum fields on both grids
    // (spectral embedding), so the change isolates discretization
    Grid coarse(128, 2.0 * kPi);
    Grid fine(256, 2.0 * kPi);
    LPPartition part_c(coarse);
    LPPartition part_f(fine);
    std::vector<std::pair<double, double>> qr128;
    double max128 = 0.0, max256 = 0.0;
    // fields live inside the coarse partition coverage so both grids see
    // the complete spectrum
    double cf = coverage_fraction(coarse);
    for (std::size_t si = 0; si < slopes.size(); ++si) {
        FieldCorpus corpus(coarse, count, 11 + si, slopes[si], cf);
        for (int i = int(si) * per_slope; i < std::min<int>(count, int(si + 1) * per_slope); ++i) {
            SpectralField gf = corpus.field(i);
            InequalitySample smp = main_inequality_ratio(gf, m, s, CzOperator::Riesz12, part_c);
            qr128.emplace_back(smp.q, smp.ratio);
            max128 = std::max(max128, smp.ratio);
            double fine_ratio =
                main_inequality_ratio(refine_to(gf, fine), m, s, CzOperator::Riesz12, part_f).ratio;
            max256 = std::max(max256, fine_ratio);
        }
    }
    double change = std::abs(max256 - max128) / max128;
    record(14, "lemma2.5-refinement-stability", change <= 0.2, qoi(change, 0.2));

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [q, r] : qr128) {
        double x = std::log(q), y = std::log(r);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = double(qr128.size());
    double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    record(14, "lemma2.5-no-Q-trend", std::abs(b) < 0.1, qoi(std::abs(b), 0.1));
}

void criterion_15() {
    Grid g(128, 2.0 * kPi);
    LPPartition part(g);
    FieldCorpus f_corpus(g, 30, 13, -2.0, 0.375);
    FieldCorpus g_corpus(g, 30, 14, -1.0, 0.75);

    double worst_const = 0.0;
    for (int i = 0; i < 30; ++i)
        worst_const = std::max(worst_const,
                               commutator_ratio(f_corpus.field(i), g_corpus.field(i),
                                                Multiplier::constant(2.0), 0.5, part));
    record(15, "commutator-vanishes-for-constant-m", worst_const <= 1e-12, qoi(worst_const, 1e-12));

    Multiplier m = Multiplier::iterated_log({1.0});
    Grid g2(256, 2.0 * kPi);
    LPPartition part2(g2);
    double max_coarse = 0.0, max_fine = 0.0;
    for (int i = 0; i < 30; ++i) {
        SpectralField ff = f_corpus.field(i);
        SpectralField gg = g_corpus.field(i);
        max_coarse = std::max(max_coarse, commutator_ratio(ff, gg, m, 0.5, part));
        max_fine = std::max(max_fine,
                            commutator_ratio(refine_to(ff, g2), refine_to(gg, g2), m, 0.5, part2));
    }
    double change = std::abs(max_fine - max_coarse) / max_coarse;
    bool ok = std::isfinite(max_coarse) && max_coarse < 100.0 && change <= 0.2;
    record(15, "commutator-bounded-and-stable", ok, qoi(change, 0.2));
}

void criterion_16() {
    Grid g(128, 2.0 * kPi);
    PatchState s = make_ellipse_patch(g, 1.0, 1.2, 0.6);
    PatchRunConfig pc;
    pc.multiplier = Multiplier::iterated_log({1.0});
    pc.t_end = 1.0;
    pc.cadence = 0.1;
    pc.mu = 0.5;
    pc.epsilon_losing = 0.1;
    pc.seed = 5;
    PatchRunResult pr = run_patch(s, pc);
    const auto& recs = pr.records;

    double mu_err = std::abs(recs.back().mu_t - (pc.mu - pc.epsilon_losing));
    record(16, "losing-exponent-endpoint-exact", !pr.blew_up && mu_err <= 1e-12,
           qoi(mu_err, 1e-12));

    // Log grad-inf decay dominated by the tangential integral with 10% slack.
    bool dominated = true;
    double tang_integral = 0.0;
    double worst = -1e300;
    for (std::size_t i = 1; i < recs.size(); ++i) {
        tang_integral +=
            0.5 * (recs[i - 1].tangential_sup + recs[i].tangential_sup) * (recs[i].t - recs[i - 1].t);
        double decay = std::log(recs.front().grad_inf) - std::log(recs[i].grad_inf);
        worst = std::max(worst, decay - 1.1 * tang_integral);
        if (decay > 1.1 * tang_integral + 1e-12) dominated = false;
    }
    record(16, "grad-inf-decay-dominated", dominated, qoi(worst, 0.0));

    std::vector<double> ts, fs;
    for (const auto& r : recs) {
        ts.push_back(r.t);
        fs.push_back(std::log(std::max(r.delta_gamma, 1.0)));
    }
    double f0 = std::max(fs.front(), 1.01);
    Multiplier m = pc.multiplier;
    OsgoodEnvelope env([m](double x) { return m.eval_log(x) * (1.0 + x); }, 1.0, 1e12, 64);
    double c_fit = std::numeric_limits<double>::quiet_NaN();
    bool fit_ok = false;
    try {
        c_fit = fit_constant_two_term(ts, fs, env, f0);
        fit_ok = std::isfinite(c_fit);
    } catch (const std::exception&) {
        fit_ok = false;
    }
    record(16, "log-delta-two-term-envelope", fit_ok, qoi(c_fit, 1e6));
}

void criterion_17() {
    auto run_to = [](const std::string& name, const fs::path& dir) {
        ScenarioOverrides o;
        o.output = dir.string();
        o.threads = 1;
        return run_scenario(name, o);
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };

    bool all_ok = true;
    std::string detail;
    for (auto [name, csv] : {std::pair<std::string, std::string>{"euler-random-smoke", "diagnostics.csv"},
                             {"hypotheses-loglog", "osgood_tail.csv"},
                             {"kernel-loglog", "kernel.csv"}}) {
        fs::path d1 = fs::temp_directory_path() / ("accept17_" + name + "_a");
        fs::path d2 = fs::temp_directory_path() / ("accept17_" + name + "_b");
        fs::remove_all(d1);
        fs::remove_all(d2);
        ScenarioResult r1 = run_to(name, d1);
        ScenarioResult r2 = run_to(name, d2);
        bool same = r1.exit_code == 0 && r2.exit_code == 0 && slurp(d1 / csv) == slurp(d2 / csv);
        if (!same) {
            all_ok = false;
            detail += name + " differs; ";
        }
    }
    record(17, "bundled-scenario-determinism", all_ok,
           all_ok ? "(byte-identical CSVs, threads=1)" : detail);
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--criteria" && i + 1 < argc) {
            std::istringstream in(argv[++i]);
            std::string tok;
            while (std::getline(in, tok, ',')) wanted.insert(std::stoi(tok));
        }
    }
    auto want = [&](int c) { return wanted.empty() || wanted.count(c) > 0; };

    try {
        if (want(1)) criterion_1();
        if (want(2)) criterion_2();
        if (want(3)) criterion_3();
        if (want(4)) criterion_4();
        if (want(5) || want(6) || want(8)) criteria_5_6_8();
        if (want(7)) criterion_7();
        if (want(9)) criterion_9();
        if (want(10)) criterion_10();
        if (want(11)) criterion_11();
        if (want(12)) criterion_12();
        if (want(13)) criterion_13();
        if (want(14)) criterion_14();
        if (want(15)) criterion_15();
        if (want(16)) criterion_16();
        if (want(17)) criterion_17();
    } catch (const std::exception& e) {
        std::printf("ACCEPT -- aborted: %s\n", e.what());
        return 1;
    }

    if (g_failures > 0) {
        std::printf("%d criterion check(s) failed\n", g_failures);
        return 1;
    }
    return 0;
}
