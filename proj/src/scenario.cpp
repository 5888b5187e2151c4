#include "supercrit/scenario.hpp"

#include "supercrit/bessel.hpp"
#include "supercrit/corpus.hpp"
#include "supercrit/csv.hpp"
#include "supercrit/euler.hpp"
#include "supercrit/lab.hpp"
#include "supercrit/lp.hpp"
#include "supercrit/osgood.hpp"
#include "supercrit/patch.hpp"
#include "supercrit/snapshot_io.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <thread>

namespace supercrit {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct BundledScenario {
    const char* name;
    const char* text;
};

const BundledScenario kBundled[] = {
#include "bundled_scenarios.inc"
};

const char* kDomainNote =
    "domain: periodic torus [0,L)^2; compactly supported data with L >= 4x the data diameter "
    "keeps periodic images negligible";
const char* kFormatNote = "floats formatted with %.17g";

std::vector<std::string> header_comments(const Config&, const Multiplier& m) {
    return {kDomainNote, "multiplier: " + m.describe(), kFormatNote};
}

// Deterministic parallel map: results land in index order regardless of
// scheduling.
void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

Grid grid_from_config(Config& cfg, const std::string& mode) {
    cfg.require("grid.N", mode);
    int n = cfg.get_int("grid.N");
    double l = cfg.get_double("domain.L", 2.0 * 3.14159265358979323846);
    try {
        return Grid(n, l);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("grid: ") + e.what());
    }
}

struct Expect {
    bool failed = false;
    json checks = json::array();

    void check(const std::string& name, double value, double limit, bool ok) {
        checks.push_back({{"name", name}, {"value", value}, {"limit", limit}, {"pass", ok}});
        if (!ok) failed = true;
    }
};

json multiplier_json(const Multiplier& m) {
    return {{"description", m.describe()}, {"clamp_floor", m.clamp_floor()}};
}

json hypothesis_json(const HypothesisReport& rep) {
    json j;
    j["doubling_constant"] = rep.doubling_constant;
    j["submultiplicative_constant"] = rep.submult_constant;
    j["log_growth_constant"] = rep.log_growth_constant;
    j["nondecreasing"] = rep.nondecreasing;
    j["min_value"] = rep.min_value;
    j["osgood_verdict"] = to_string(rep.osgood.verdict);
    j["osgood_note"] = rep.osgood.evidence.note;
    j["osgood_last_increment"] = rep.osgood.evidence.last_increment;
    j["osgood_loglog_slope"] = rep.osgood.evidence.loglog_slope;
    j["osgood_decay_exponent"] = rep.osgood.evidence.decay_exponent;
    return j;
}

// ---------------------------------------------------------------- euler ---

SpectralField initial_from_config(Config& cfg, const Grid& grid, std::uint64_t seed) {
    std::string kind = cfg.get_string("euler.initial", "two-vortex");
    if (kind == "two-vortex") {
        return make_two_vortex(grid, cfg.get_double("euler.amplitude", 4.0),
                               cfg.get_double("euler.sigma", 0.5),
                               cfg.get_double("euler.separation", 1.8));
    }
    if (kind == "single-mode") {
        return make_single_mode(grid, cfg.get_int("euler.modeX", 1), cfg.get_int("euler.modeY", 0),
                                cfg.get_double("euler.amplitude", 1.0));
    }
    if (kind == "radial-bump") {
        return make_radial_bump(grid, cfg.get_double("euler.sigma", 0.35),
                                cfg.get_double("euler.amplitude", 1.0));
    }
    if (kind == "random") {
        FieldCorpus corpus(grid, 1, seed, cfg.get_double("euler.slope", -2.0),
                           cfg.get_double("euler.cutoffFraction", 0.5));
        SpectralField f = corpus.field(0);
        f *= cfg.get_double("euler.amplitude", 1.0);
        return f;
    }
    throw ConfigError("unknown euler.initial: " + kind);
}

int run_euler_mode(Config& cfg, const fs::path& out_dir, const Multiplier& m, std::uint64_t seed,
                   json& report) {
    Grid grid = grid_from_config(cfg, "euler");
    SolverConfig sc;
    sc.grid = grid;
    sc.multiplier = m;
    std::string stepper = cfg.get_string("euler.stepper", "rk4");
    if (stepper == "rk4")
        sc.stepper = Stepper::RK4;
    else if (stepper == "split-iterate")
        sc.stepper = Stepper::SplitIterate;
    else
        throw ConfigError("unknown euler.stepper: " + stepper);
    sc.split_iterations = cfg.get_int("euler.splitIterations", 3);
    sc.dt.fixed_dt = cfg.get_double("euler.dt", 0.0);
    sc.dt.cfl_safety = cfg.get_double("euler.cflSafety", 0.5);
    sc.t_end = cfg.get_double("euler.tEnd", 1.0);
    sc.cadence = cfg.get_double("euler.cadence", 0.1);
    sc.s_list = cfg.get_double_list("euler.sList", {0.5});
    sc.track_modulus = cfg.get_bool("euler.trackModulus", false);
    sc.track_bkm_integral = cfg.get_bool("euler.trackBkm", true);
    sc.modulus_seed = seed;
    sc.validate();

    SpectralField omega0 = initial_from_config(cfg, grid, seed);
    double snapshot_every = cfg.get_double("snapshots.every", 0.0);

    double next_snap = 0.0;
    int snap_index = 0;
    auto sink = [&](const SpectralField& f, double t) {
        bool take = t == 0.0 || t >= sc.t_end - 1e-12 ||
                    (snapshot_every > 0.0 && t >= next_snap - 1e-12);
        if (!take) return;
        char name[64];
        std::snprintf(name, sizeof name, "omega_%04d", snap_index++);
        write_snapshot((out_dir / (std::string(name) + ".fld")).string(), f, name, m, t);
        if (snapshot_every > 0.0)
            while (next_snap <= t + 1e-12) next_snap += snapshot_every;
    };

    RunResult run_result = run(sc, omega0, sink);

    std::vector<std::string> cols = {"t", "L2", "Linf"};
    for (double s : sc.s_list) {
        char b[32];
        std::snprintf(b, sizeof b, "Cs_proxy_s%g", s);
        cols.push_back(b);
    }
    cols.push_back("grad_u_inf");
    cols.push_back("f");
    cols.push_back("bkm_integral");
    CsvWriter csv((out_dir / "diagnostics.csv").string(), cols, header_comments(cfg, m));
    for (const auto& rec : run_result.series.records) {
        std::vector<double> row = {rec.t, rec.l2, rec.linf};
        row.insert(row.end(), rec.cs_proxy.begin(), rec.cs_proxy.end());
        row.push_back(rec.grad_u_inf);
        row.push_back(rec.f);
        row.push_back(rec.bkm_integral);
        csv.row(row);
    }
    if (sc.track_modulus) {
        CsvWriter mod((out_dir / "modulus.csv").string(), {"t", "j", "sup_block_grad_over_m"},
                      header_comments(cfg, m));
        for (const auto& rec : run_result.series.records)
            for (const auto& [j, v] : rec.modulus_table)
                mod.row(std::vector<double>{rec.t, double(j), v});
    }
    {
        char head[64];
        std::snprintf(head, sizeof head, "per-block norms at s = %g", sc.s_list.front());
        auto comments = header_comments(cfg, m);
        comments.push_back(head);
        CsvWriter blk((out_dir / "blocks.csv").string(),
                      {"t", "j", "l2", "linf", "weighted_l2", "weighted_linf"}, comments);
        for (const auto& rec : run_result.series.records)
            for (const auto& row : rec.block_rows)
                blk.row(std::vector<double>{rec.t, double(row.j), row.l2, row.linf,
                                            row.weighted_l2, row.weighted_linf});
    }

    const auto& recs = run_result.series.records;
    double l2_drift = 0.0, linf_growth = 0.0, bkm_excess = 0.0;
    for (const auto& rec : recs) {
        l2_drift = std::max(l2_drift, std::abs(rec.l2 - recs.front().l2) / recs.front().l2);
        linf_growth = std::max(linf_growth, (rec.linf - recs.front().linf) / recs.front().linf);
    }
    for (std::size_t i = 1; i < recs.size(); ++i) {
        double dlog = std::log(recs[i].cs_proxy.front()) - std::log(recs[i - 1].cs_proxy.front());
        bkm_excess = std::max(bkm_excess, dlog - recs[i].bkm_integral);
    }

    report["steps"] = run_result.steps_taken;
    report["fitted_envelope_constant"] = run_result.fitted_envelope_constant;
    report["envelope_f0"] = run_result.envelope_f0;
    report["l2_drift"] = l2_drift;
    report["linf_growth"] = linf_growth;
    report["bkm_excess"] = bkm_excess;  // max of dLog(proxy) - int ||grad u|| over intervals
    report["blow_up"] = run_result.series.blew_up;
    if (run_result.series.blew_up) {
        report["blow_up_time"] = run_result.series.blow_up_time;
        report["blow_up_reason"] = run_result.series.blow_up_reason;
        return 3;
    }

    Expect expect;
    if (cfg.has("expect.l2DriftMax")) {
        double lim = cfg.get_double("expect.l2DriftMax");
        expect.check("l2_drift", l2_drift, lim, l2_drift <= lim);
    }
    if (cfg.has("expect.linfGrowthMax")) {
        double lim = cfg.get_double("expect.linfGrowthMax");
        expect.check("linf_growth", linf_growth, lim, linf_growth <= lim);
    }
    if (cfg.has("expect.bkmSlack")) {
        double slack = cfg.get_double("expect.bkmSlack");
        bool ok = true;
        for (std::size_t i = 1; i < recs.size(); ++i) {
            double dlog =
                std::log(recs[i].cs_proxy.front()) - std::log(recs[i - 1].cs_proxy.front());
            if (dlog > (1.0 + slack) * recs[i].bkm_integral + 1e-9) ok = false;
        }
        expect.check("bkm_intervals", bkm_excess, slack, ok);
    }
    report["expect"] = expect.checks;
    return expect.failed ? 4 : 0;
}

// ---------------------------------------------------------------- patch ---

int run_patch_mode(Config& cfg, const fs::path& out_dir, const Multiplier& m, std::uint64_t seed,
                   json& report) {
    Grid grid = grid_from_config(cfg, "patch");
    std::string shape = cfg.get_string("patch.shape", "circle");
    double a0 = cfg.get_double("patch.a0", 1.0);
    double width_cells = cfg.get_double("patch.profileWidthCells", 8.0);

    PatchState state;
    if (shape == "circle") {
        state = make_circle_patch(grid, a0, cfg.get_double("patch.radius", 0.8), width_cells);
    } else if (shape == "ellipse") {
        state = make_ellipse_patch(grid, a0, cfg.get_double("patch.semiX", 1.2),
                                   cfg.get_double("patch.semiY", 0.6), width_cells);
    } else {
        throw ConfigError("unknown patch.shape for dynamics: " + shape);
    }

    PatchRunConfig pc;
    pc.multiplier = m;
    std::string stepper = cfg.get_string("patch.stepper", "rk4");
    if (stepper == "rk4")
        pc.stepper = Stepper::RK4;
    else if (stepper == "semi-lagrangian")
        pc.stepper = Stepper::SplitIterate;
    else
        throw ConfigError("unknown patch.stepper: " + stepper);
    pc.dt.fixed_dt = cfg.get_double("patch.dt", 0.0);
    pc.dt.cfl_safety = cfg.get_double("patch.cflSafety", 0.5);
    pc.t_end = cfg.get_double("patch.tEnd", 1.0);
    pc.cadence = cfg.get_double("patch.cadence", 0.1);
    pc.mu = cfg.get_double("patch.mu", 0.5);
    pc.epsilon_losing = cfg.get_double("patch.epsilon", 0.1);
    pc.seed = seed;
    pc.pair_budget = cfg.get_int("patch.pairBudget", 4096);

    write_snapshot((out_dir / "phi_initial.fld").string(), state.phi, "phi_initial", m, 0.0);
    PatchRunResult pr = run_patch(state, pc);
    write_snapshot((out_dir / "phi_final.fld").string(), pr.final_state.phi, "phi_final", m,
                   pr.final_state.t);

    CsvWriter csv((out_dir / "diagnostics.csv").string(),
                  {"t", "area", "grad_inf", "grad_holder_mu", "grad_holder_gamma", "Delta_mu",
                   "Delta_gamma", "tangential_sup", "grad_u_band_sup", "V", "mu_t"},
                  header_comments(cfg, m));
    for (const auto& r : pr.records)
        csv.row(std::vector<double>{r.t, r.area, r.grad_inf, r.grad_holder_mu,
                                    r.grad_holder_gamma, r.delta_mu, r.delta_gamma,
                                    r.tangential_sup, r.grad_u_band_sup, r.v_accum, r.mu_t});

    if (cfg.get_bool("patch.arcMeasure", false)) {
        std::vector<double> rhos = cfg.get_double_list("patch.arcRhos", {0.05, 0.1, 0.2, 0.4});
        Vec2 x0{cfg.get_double("patch.arcX0x", 0.5 * grid.length),
                cfg.get_double("patch.arcX0y",
                               0.5 * grid.length + cfg.get_double("patch.radius", 0.8) - 0.03)};
        ArcMeasureTable table =
            arc_measure(pr.final_state, x0, rhos, cfg.get_double("patch.arcMu", 1.0), 4096, seed);
        CsvWriter arc((out_dir / "arc_measure.csv").string(),
                      {"t", "x0_index", "rho", "measure", "bound", "d"}, header_comments(cfg, m));
        for (const auto& row : table.rows)
            arc.row(std::vector<double>{pr.final_state.t, 0.0, row.rho, row.measure, row.bound,
                                        table.d});
        report["arc_measure_d"] = table.d;
        report["arc_measure_delta_mu"] = table.delta_mu;
    }

    const auto& recs = pr.records;
    double area_drift = 0.0;
    for (const auto& r : recs)
        area_drift = std::max(area_drift, std::abs(r.area - recs.front().area) / recs.front().area);

    double displacement = std::numeric_limits<double>::quiet_NaN();
    if (shape == "circle" && !pr.blew_up) {
        displacement = boundary_displacement(state.phi, pr.final_state.phi);
        report["boundary_displacement"] = displacement;
        report["boundary_displacement_cells"] = displacement / grid.spacing();
    }

    // Log|grad phi|_inf decay against the integral of the tangential sup
    // (the measured two sides of the band gradient estimate).
    double worst_inf_violation = -1e300;
    double tang_integral = 0.0;
    for (std::size_t i = 1; i < recs.size(); ++i) {
        tang_integral +=
            0.5 * (recs[i - 1].tangential_sup + recs[i].tangential_sup) * (recs[i].t - recs[i - 1].t);
        double decay = std::log(recs.front().grad_inf) - std::log(recs[i].grad_inf);
        worst_inf_violation = std::max(worst_inf_violation, decay - 1.1 * tang_integral);
    }
    report["grad_inf_decay_excess"] = worst_inf_violation;  // <= 0 means dominated with 10% slack
    report["tangential_sup_integral"] = tang_integral;

    // Two-term envelope fit for Log Delta_gamma (the losing-estimate
    // bookkeeping quantity).
    {
        std::vector<double> ts, fs;
        for (const auto& r : recs) {
            ts.push_back(r.t);
            fs.push_back(std::log(std::max(r.delta_gamma, 1.0)));
        }
        double f0 = std::max(fs.front(), 1.01);
        Multiplier mm = m;
        OsgoodEnvelope env([mm](double x) { return mm.eval_log(x) * (1.0 + x); }, 1.0, 1e12, 64);
        try {
            report["two_term_fitted_constant"] = fit_constant_two_term(ts, fs, env, f0);
            report["two_term_f0"] = f0;
        } catch (const std::exception& e) {
            report["two_term_fit_error"] = e.what();
        }
    }

    report["eta"] = pr.eta;
    report["mu_final"] = recs.back().mu_t;
    report["mu_final_expected"] = pc.mu - pc.epsilon_losing;
    report["area_drift"] = area_drift;
    report["steps"] = pr.steps_taken;
    report["regularity_lost"] = pr.regularity_lost;
    report["blow_up"] = pr.blew_up;
    if (pr.blew_up || pr.regularity_lost) {
        report["failure_time"] = pr.failure_time;
        report["failure_reason"] = pr.failure_reason;
        return 3;
    }

    Expect expect;
    if (cfg.has("expect.maxDisplacementCells")) {
        double lim = cfg.get_double("expect.maxDisplacementCells");
        double cells = displacement / grid.spacing();
        expect.check("boundary_displacement_cells", cells, lim, cells <= lim);
    }
    if (cfg.has("expect.areaDriftMax")) {
        double lim = cfg.get_double("expect.areaDriftMax");
        expect.check("area_drift", area_drift, lim, area_drift <= lim);
    }
    report["expect"] = expect.checks;
    return expect.failed ? 4 : 0;
}

// --------------------------------------------------------- lab modes ------

int run_lab_inequality(Config& cfg, const fs::path& out_dir, const Multiplier& m,
                       std::uint64_t seed, int threads, json& report) {
    Grid grid = grid_from_config(cfg, "lab-inequality");
    int count = cfg.get_int("lab.count", 200);
    double s = cfg.get_double("lab.s", 0.5);
    CzOperator op = cz_operator_from_string(cfg.get_string("lab.operator", "riesz12"));
    std::vector<double> slopes = cfg.get_double_list("lab.slopes", {-2.0, -1.0, -0.5, 0.0});
    double cutoff = cfg.get_double("lab.cutoffFraction", 1.0);

    struct Entry {
        double slope, ratio, q;
        int index;
    };
    std::vector<Entry> entries(static_cast<std::size_t>(count));
    int per_slope = std::max(1, count / int(slopes.size()));
    {
        LPPartition part(grid);
        std::vector<FieldCorpus> corpora;
        for (std::size_t si = 0; si < slopes.size(); ++si)
            corpora.emplace_back(grid, count, seed + si, slopes[si], cutoff);
        parallel_for(count, threads, [&](int i) {
            std::size_t si = std::min(std::size_t(i / per_slope), slopes.size() - 1);
            InequalitySample smp = main_inequality_ratio(corpora[si].field(i), m, s, op, part);
            entries[std::size_t(i)] = {slopes[si], smp.ratio, smp.q, i};
        });
    }

    CsvWriter csv((out_dir / "ratios.csv").string(), {"index", "slope", "Q", "ratio"},
                  header_comments(cfg, m));
    double max_ratio = 0.0;
    int argmax = -1;
    for (const auto& e : entries) {
        csv.row(std::vector<double>{double(e.index), e.slope, e.q, e.ratio});
        if (e.ratio > max_ratio) {
            max_ratio = e.ratio;
            argmax = e.index;
        }
    }

    // Log-Log regression of ratio against Q.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& e : entries) {
        double x = std::log(e.q), y = std::log(std::max(e.ratio, 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = double(entries.size());
    double denom = n * sxx - sx * sx;
    double slope_fit = denom > 1e-12 ? (n * sxy - sx * sy) / denom : 0.0;

    report["max_ratio"] = max_ratio;
    report["argmax_index"] = argmax;
    report["loglog_slope_vs_Q"] = slope_fit;
    report["samples"] = count;
    report["seed"] = seed;

    if (cfg.get_bool("lab.refine", false)) {
        // The same fields spectrally embedded on the doubled grid, so the
        // change isolates discretization.
        Grid fine(grid.n * 2, grid.length);
        LPPartition part_f(fine);
        double max_fine = 0.0;
        std::vector<double> fine_ratios(static_cast<std::size_t>(count));
        std::vector<FieldCorpus> corpora;
        for (std::size_t si = 0; si < slopes.size(); ++si)
            corpora.emplace_back(grid, count, seed + si, slopes[si], cutoff);
        parallel_for(count, threads, [&](int i) {
            std::size_t si = std::min(std::size_t(i / per_slope), slopes.size() - 1);
            fine_ratios[std::size_t(i)] =
                main_inequality_ratio(refine_to(corpora[si].field(i), fine), m, s, op, part_f).ratio;
        });
        for (double r : fine_ratios) max_fine = std::max(max_fine, r);
        report["max_ratio_refined"] = max_fine;
        report["refinement_change"] = std::abs(max_fine - max_ratio) / max_ratio;
    }
    return 0;
}

int run_lab_kernel(Config& cfg, const fs::path& out_dir, const Multiplier& m, json& report) {
    double rho_min = cfg.get_double("kernel.rhoMin", 1e-3);
    double rho_max = cfg.get_double("kernel.rhoMax", 1.0);
    int points = cfg.get_int("kernel.points", 25);
    int nodes = cfg.get_int("kernel.nodes", 16);

    std::vector<double> rhos;
    for (int i = 0; i < points; ++i)
        rhos.push_back(rho_min * std::pow(rho_max / rho_min, double(i) / (points - 1)));

    KernelTable coarse = compute_radial_kernel(m, rhos, nodes);
    KernelTable fine = compute_radial_kernel(m, rhos, nodes * 2);

    CsvWriter csv((out_dir / "kernel.csv").string(),
                  {"rho", "f_hat", "f_hat_d1", "f_hat_d2", "majorant_ratio"},
                  header_comments(cfg, m));
    for (const auto& r : coarse.rows)
        csv.row(std::vector<double>{r.rho, r.f_hat, r.f_hat_d1, r.f_hat_d2, r.majorant_ratio});

    report["majorant_sup"] = coarse.majorant_sup;
    report["majorant_sup_refined"] = fine.majorant_sup;
    report["majorant_stability"] =
        std::abs(fine.majorant_sup - coarse.majorant_sup) / coarse.majorant_sup;
    report["log_slope"] = coarse.log_slope;
    report["zero_intervals"] = coarse.zero_intervals;
    return 0;
}

int run_lab_commutator(Config& cfg, const fs::path& out_dir, const Multiplier& m,
                       std::uint64_t seed, int threads, json& report) {
    Grid grid = grid_from_config(cfg, "lab-commutator");
    int count = cfg.get_int("lab.count", 50);
    double mu = cfg.get_double("lab.mu", 0.5);
    // f smooth (below N/8), g rougher (below N/4); products stay alias-free.
    FieldCorpus f_corpus(grid, count, seed, cfg.get_double("lab.fSlope", -2.0), 0.375);
    FieldCorpus g_corpus(grid, count, seed + 1, cfg.get_double("lab.gSlope", -1.0), 0.75);

    LPPartition part(grid);
    std::vector<double> ratios(static_cast<std::size_t>(count));
    parallel_for(count, threads, [&](int i) {
        ratios[std::size_t(i)] = commutator_ratio(f_corpus.field(i), g_corpus.field(i), m, mu, part);
    });

    CsvWriter csv((out_dir / "ratios.csv").string(), {"index", "ratio"}, header_comments(cfg, m));
    double max_ratio = 0.0;
    for (int i = 0; i < count; ++i) {
        csv.row(std::vector<double>{double(i), ratios[std::size_t(i)]});
        max_ratio = std::max(max_ratio, ratios[std::size_t(i)]);
    }
    report["max_ratio"] = max_ratio;
    report["samples"] = count;
    report["seed"] = seed;

    if (cfg.get_bool("lab.refine", false)) {
        // the same fields spectrally embedded on the doubled grid
        Grid fine(grid.n * 2, grid.length);
        LPPartition part2(fine);
        std::vector<double> r2(static_cast<std::size_t>(count));
        parallel_for(count, threads, [&](int i) {
            r2[std::size_t(i)] = commutator_ratio(refine_to(f_corpus.field(i), fine),
                                                  refine_to(g_corpus.field(i), fine), m, mu, part2);
        });
        double max_fine = 0.0;
        for (double r : r2) max_fine = std::max(max_fine, r);
        report["max_ratio_refined"] = max_fine;
        report["refinement_change"] = std::abs(max_fine - max_ratio) / std::max(max_ratio, 1e-300);
    }
    return 0;
}

int run_osgood_table(Config& cfg, const fs::path& out_dir, json& report) {
    std::string kind = cfg.get_string("osgood.gamma", "gamma-symbol");
    double f0 = cfg.get_double("osgood.f0", 2.0);
    double c = cfg.get_double("osgood.C", 1.0);
    double t_end = cfg.get_double("osgood.tEnd", 5.0);
    int points = cfg.get_int("osgood.points", 200);
    bool two_term = cfg.get_bool("osgood.twoTerm", false);
    double table_top = cfg.get_double("osgood.tableTop", 1e300);
    double lower = cfg.get_double("osgood.lowerLimit", 1.0);

    std::function<double(double)> gamma;
    std::string gamma_desc;
    if (kind == "linear") {
        gamma = [](double r) { return r; };
        gamma_desc = "gamma(r) = r";
    } else if (kind == "gamma-symbol") {
        Multiplier m = multiplier_from_config(cfg);
        GammaSymbol gs(m);
        gamma = [gs](double r) { return r * gs(r); };
        gamma_desc = "gamma(r) = r m(r)(1+Log r), " + m.describe();
    } else if (kind == "m-exp") {
        Multiplier m = multiplier_from_config(cfg);
        gamma = [m](double x) { return m.eval_log(x) * (1.0 + x); };
        gamma_desc = "gamma(x) = m(e^x)(1+x), " + m.describe();
    } else {
        throw ConfigError("unknown osgood.gamma: " + kind);
    }

    OsgoodEnvelope env(gamma, lower, table_top);
    std::vector<double> ts;
    for (int i = 0; i < points; ++i) ts.push_back(t_end * double(i) / (points - 1));
    std::vector<double> curve =
        two_term ? env.two_term_envelope(f0, c, ts) : env.envelope(f0, c, ts);

    CsvWriter csv((out_dir / "envelope.csv").string(), {"t", "bound"},
                  {kDomainNote, gamma_desc, kFormatNote});
    for (std::size_t i = 0; i < ts.size(); ++i) csv.row(std::vector<double>{ts[i], curve[i]});

    report["gamma"] = gamma_desc;
    report["f0"] = f0;
    report["C"] = c;
    report["two_term"] = two_term;
    report["H_max"] = env.h_max();
    report["final_bound"] = curve.back();
    return 0;
}

int run_hypotheses(Config& cfg, const fs::path& out_dir, const Multiplier& m, json& report) {
    double lo = cfg.get_double("hypotheses.gridLo", 1.0);
    double hi = cfg.get_double("hypotheses.gridHi", std::min(1e12, m.max_argument()));
    int ppd = cfg.get_int("hypotheses.pointsPerDecade", 128);
    HypothesisReport rep = check_hypotheses(m, log_grid(lo, hi, ppd));

    report["hypotheses"] = hypothesis_json(rep);
    CsvWriter csv((out_dir / "osgood_tail.csv").string(), {"T", "I_T"}, header_comments(cfg, m));
    for (std::size_t i = 0; i < rep.osgood.evidence.upper_limits.size(); ++i)
        csv.row(std::vector<double>{rep.osgood.evidence.upper_limits[i],
                                    rep.osgood.evidence.tail_integrals[i]});

    Expect expect;
    if (cfg.has("expect.osgoodVerdict")) {
        std::string want = cfg.get_string("expect.osgoodVerdict");
        bool ok = to_string(rep.osgood.verdict) == want;
        expect.check("osgood_verdict_is_" + want, ok ? 1.0 : 0.0, 1.0, ok);
    }
    report["expect"] = expect.checks;
    return expect.failed ? 4 : 0;
}

}  // namespace

std::vector<std::string> bundled_scenario_names() {
    std::vector<std::string> names;
    for (const auto& s : kBundled) names.push_back(s.name);
    return names;
}

std::string bundled_scenario_text(const std::string& name) {
    for (const auto& s : kBundled)
        if (name == s.name) return s.text;
    throw ConfigError("unknown bundled scenario: " + name);
}

Config load_scenario_config(const std::string& path_or_name) {
    for (const auto& s : kBundled)
        if (path_or_name == s.name) return Config::parse_string(s.text, path_or_name);
    return Config::parse_file(path_or_name);
}

Multiplier multiplier_from_config(Config& cfg) {
    cfg.require("multiplier.kind", cfg.get_string("mode", "?"));
    std::string kind = cfg.get_string("multiplier.kind");
    double clamp = cfg.get_double("multiplier.clampFloor", 2.0);
    try {
        if (kind == "constant") return Multiplier::constant(cfg.get_double("multiplier.c", 1.0), clamp);
        if (kind == "iterated-log")
            return Multiplier::iterated_log(cfg.get_double_list("multiplier.exponents", {1.0}), clamp);
        if (kind == "table")
            return Multiplier::user_table(cfg.get_double_list("multiplier.table.r"),
                                          cfg.get_double_list("multiplier.table.m"), clamp);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("multiplier: ") + e.what());
    }
    throw ConfigError("unknown multiplier.kind: " + kind);
}

namespace {

const std::set<std::string> kModes = {"euler",      "patch",          "lab-inequality",
                                      "lab-kernel", "lab-commutator", "osgood-table",
                                      "hypotheses"};

const std::set<std::string> kSeedMandatoryModes = {"lab-inequality", "lab-commutator"};

void validate_config(Config& cfg) {
    cfg.require("name", "?");
    cfg.require("mode", "?");
    std::string mode = cfg.get_string("mode");
    if (!kModes.count(mode)) throw ConfigError("unknown mode: " + mode);

    if (kSeedMandatoryModes.count(mode) && !cfg.has("seed"))
        throw ConfigError("seed required for mode=" + mode + " (corpus modes need explicit seeds)");
    if (mode == "euler" && cfg.get_string("euler.initial", "two-vortex") == "random" &&
        !cfg.has("seed"))
        throw ConfigError("seed required for euler.initial=random");

    if (mode == "euler" || mode == "patch" || mode == "lab-inequality" || mode == "lab-commutator")
        cfg.require("grid.N", mode);
    bool needs_multiplier =
        mode != "osgood-table" || cfg.get_string("osgood.gamma", "gamma-symbol") != "linear";
    if (needs_multiplier) cfg.require("multiplier.kind", mode);

    // Construct the cheap pieces so obvious nonsense fails in validate.
    if (needs_multiplier) (void)multiplier_from_config(cfg);
    if (cfg.has("grid.N")) (void)grid_from_config(cfg, mode);
    if (mode == "patch") {
        double mu = cfg.get_double("patch.mu", 0.5);
        double eps = cfg.get_double("patch.epsilon", 0.1);
        if (!(mu > 0.0) || !(mu <= 1.0)) throw ConfigError("patch.mu must lie in (0, 1]");
        if (!(eps > 0.0) || !(eps < mu))
            throw ConfigError("patch.epsilon must lie in (0, patch.mu)");
    }
}

}  // namespace

void validate_scenario(const std::string& path_or_name) {
    Config cfg = load_scenario_config(path_or_name);
    validate_config(cfg);
}

ScenarioResult run_scenario(const std::string& path_or_name, const ScenarioOverrides& overrides) {
    auto start = std::chrono::steady_clock::now();

    Config cfg = load_scenario_config(path_or_name);
    validate_config(cfg);

    std::string mode = cfg.get_string("mode");
    std::string name = cfg.get_string("name");
    if (overrides.seed) cfg.set("seed", std::to_string(*overrides.seed));
    if (overrides.threads) cfg.set("threads", std::to_string(*overrides.threads));
    if (overrides.output) cfg.set("output", *overrides.output);

    std::uint64_t seed = cfg.has("seed") ? cfg.get_u64("seed") : 1;
    int threads = cfg.get_int("threads", 1);
    fs::path out_dir = cfg.get_string("output", "out/" + name);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory: " + out_dir.string());

    ScenarioResult result;
    result.output_dir = out_dir.string();

    json report;
    report["name"] = name;
    report["mode"] = mode;
    report["seed"] = seed;

    int code = 0;
    if (mode == "osgood-table") {
        code = run_osgood_table(cfg, out_dir, report);
    } else {
        Multiplier m = multiplier_from_config(cfg);
        report["multiplier"] = multiplier_json(m);
        if (mode == "hypotheses") {
            code = run_hypotheses(cfg, out_dir, m, report);
        } else if (mode == "euler") {
            report["hypotheses"] = hypothesis_json(check_hypotheses(m));
            code = run_euler_mode(cfg, out_dir, m, seed, report);
        } else if (mode == "patch") {
            report["hypotheses"] = hypothesis_json(check_hypotheses(m));
            code = run_patch_mode(cfg, out_dir, m, seed, report);
        } else if (mode == "lab-inequality") {
            code = run_lab_inequality(cfg, out_dir, m, seed, threads, report);
        } else if (mode == "lab-kernel") {
            code = run_lab_kernel(cfg, out_dir, m, report);
        } else if (mode == "lab-commutator") {
            code = run_lab_commutator(cfg, out_dir, m, seed, threads, report);
        }
    }

    auto end = std::chrono::steady_clock::now();
    report["wall_clock_seconds"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count() / 1000.0;
    report["resolved_config"] = cfg.serialize_resolved();

    {
        std::ofstream rc(out_dir / "resolved.cfg");
        rc << cfg.serialize_resolved();
        std::ofstream rj(out_dir / "report.json");
        rj << report.dump(2) << "\n";
    }

    result.exit_code = code;
    result.report_json = report.dump(2);
    return result;
}

}  // namespace supercrit
