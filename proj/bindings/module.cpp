#include "supercrit/bessel.hpp"
#include "supercrit/corpus.hpp"
#include "supercrit/euler.hpp"
#include "supercrit/lab.hpp"
#include "supercrit/lp.hpp"
#include "supercrit/multiplier.hpp"
#include "supercrit/osgood.hpp"
#include "supercrit/patch.hpp"
#include "supercrit/scenario.hpp"

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <optional>

namespace py = pybind11;
using namespace supercrit;

namespace {

py::array_t<double> to_array(const SpectralField& f) {
    const int n = f.n();
    py::array_t<double> out({n, n});
    std::memcpy(out.mutable_data(), f.phys(), sizeof(double) * std::size_t(n) * n);
    return out;
}

SpectralField from_array(const Grid& g, py::array_t<double, py::array::c_style | py::array::forcecast> a) {
    if (a.ndim() != 2 || a.shape(0) != g.n || a.shape(1) != g.n)
        throw std::invalid_argument("array shape must be (N, N) for the grid");
    SpectralField f(g);
    std::memcpy(f.phys(), a.data(), sizeof(double) * std::size_t(g.n) * g.n);
    return f;
}

py::dict hypothesis_dict(const HypothesisReport& rep) {
    py::dict d;
    d["doubling_constant"] = rep.doubling_constant;
    d["submultiplicative_constant"] = rep.submult_constant;
    d["log_growth_constant"] = rep.log_growth_constant;
    d["nondecreasing"] = rep.nondecreasing;
    d["min_value"] = rep.min_value;
    d["osgood_verdict"] = to_string(rep.osgood.verdict);
    d["osgood_note"] = rep.osgood.evidence.note;
    d["tail_upper_limits"] = rep.osgood.evidence.upper_limits;
    d["tail_integrals"] = rep.osgood.evidence.tail_integrals;
    return d;
}

py::dict series_dict(const DiagnosticSeries& s, const std::vector<double>& s_list) {
    py::dict d;
    std::vector<double> t, l2, linf, grad, f, bkm;
    std::vector<std::vector<double>> proxies(s_list.size());
    for (const auto& r : s.records) {
        t.push_back(r.t);
        l2.push_back(r.l2);
        linf.push_back(r.linf);
        grad.push_back(r.grad_u_inf);
        f.push_back(r.f);
        bkm.push_back(r.bkm_integral);
        for (std::size_t i = 0; i < s_list.size(); ++i) proxies[i].push_back(r.cs_proxy[i]);
    }
    d["t"] = t;
    d["l2"] = l2;
    d["linf"] = linf;
    d["grad_u_inf"] = grad;
    d["f"] = f;
    d["bkm_integral"] = bkm;
    py::dict pd;
    for (std::size_t i = 0; i < s_list.size(); ++i) pd[py::float_(s_list[i])] = proxies[i];
    d["cs_proxy"] = pd;
    d["blew_up"] = s.blew_up;
    return d;
}

}  // namespace

PYBIND11_MODULE(_supercrit2d, m) {
    m.doc() = "pseudospectral runs and inequality checks for the slightly supercritical "
              "2-D Euler family";

    py::class_<Multiplier>(m, "Multiplier")
        .def_static("constant", &Multiplier::constant, py::arg("c"), py::arg("clamp_floor") = 2.0)
        .def_static("iterated_log", &Multiplier::iterated_log, py::arg("exponents"),
                    py::arg("clamp_floor") = 2.0)
        .def_static("user_table", &Multiplier::user_table, py::arg("r"), py::arg("m"),
                    py::arg("clamp_floor") = 2.0)
        .def("__call__", &Multiplier::operator())
        .def("describe", &Multiplier::describe)
        .def_property_readonly("clamp_floor", &Multiplier::clamp_floor);

    m.def("check_hypotheses",
          [](const Multiplier& mult) { return hypothesis_dict(check_hypotheses(mult)); });
    m.def("check_osgood_condition", [](const Multiplier& mult, std::vector<double> limits) {
        OsgoodResult r = check_osgood_condition(mult, limits);
        py::dict d;
        d["verdict"] = to_string(r.verdict);
        d["tail_integrals"] = r.evidence.tail_integrals;
        d["note"] = r.evidence.note;
        return d;
    });

    py::class_<Grid>(m, "Grid")
        .def(py::init<int, double>(), py::arg("n"), py::arg("length") = 2.0 * 3.14159265358979323846)
        .def_readonly("n", &Grid::n)
        .def_readonly("length", &Grid::length)
        .def("spacing", &Grid::spacing);

    py::class_<SpectralField>(m, "SpectralField")
        .def_property_readonly("grid", &SpectralField::grid)
        .def("to_array", &to_array)
        .def("l2_norm", &SpectralField::l2_norm)
        .def("max_abs", &SpectralField::max_abs)
        .def("mean", &SpectralField::mean);

    py::class_<VectorField>(m, "VectorField")
        .def_property_readonly("x", [](const VectorField& v) { return v.x; })
        .def_property_readonly("y", [](const VectorField& v) { return v.y; })
        .def("max_norm", &VectorField::max_norm);

    m.def("field_from_array", &from_array, py::arg("grid"), py::arg("values"));
    m.def("make_single_mode", &make_single_mode, py::arg("grid"), py::arg("n1"), py::arg("n2"),
          py::arg("amplitude") = 1.0);
    m.def("make_radial_bump", &make_radial_bump, py::arg("grid"), py::arg("sigma") = 0.35,
          py::arg("amplitude") = 1.0);
    m.def("make_two_vortex", &make_two_vortex, py::arg("grid"), py::arg("amplitude") = 4.0,
          py::arg("sigma") = 0.35, py::arg("separation") = 1.4);

    m.def("biot_savart", &biot_savart);
    m.def("apply_multiplier", &apply_multiplier);
    m.def("gradient", &gradient);
    m.def("perp_gradient", &perp_gradient);
    m.def("dealias", py::overload_cast<const SpectralField&>(&dealias));
    m.def("divergence", &divergence);

    py::class_<LPPartition>(m, "LPPartition")
        .def(py::init<const Grid&, int>(), py::arg("grid"), py::arg("transition_order") = 2)
        .def_property_readonly("j_max", &LPPartition::j_max)
        .def("chi", &LPPartition::chi)
        .def("phi", &LPPartition::phi);

    m.def("decompose", [](const SpectralField& f, const LPPartition& p) {
        LPDecomposition d = decompose(f, p);
        py::list blocks;
        for (const auto& b : d.blocks) blocks.append(to_array(b));
        return blocks;
    });
    m.def("besov_norms", [](const SpectralField& f, const LPPartition& p, double s) {
        BesovNorms bn = besov_norms(f, p, s);
        py::dict d;
        d["s"] = bn.s;
        d["x_norm"] = bn.x_norm;
        d["y_norm"] = bn.y_norm;
        d["l2"] = bn.l2;
        d["combined"] = bn.combined;
        d["j_max"] = bn.j_max;
        return d;
    });
    m.def("sup_block_gradient", &sup_block_gradient);

    py::class_<OsgoodEnvelope>(m, "OsgoodEnvelope")
        .def(py::init<std::function<double(double)>, double, double, int>(), py::arg("gamma"),
             py::arg("lower_limit") = 1.0, py::arg("table_top") = 1e300,
             py::arg("points_per_decade") = 64)
        .def_static("for_gamma_symbol", &OsgoodEnvelope::for_gamma_symbol, py::arg("gamma"),
                    py::arg("lower_limit") = 1.0, py::arg("table_top") = 1e300,
                    py::arg("points_per_decade") = 64)
        .def("H", &OsgoodEnvelope::H)
        .def("H_inverse", &OsgoodEnvelope::H_inverse)
        .def("envelope",
             [](const OsgoodEnvelope& e, double f0, double c, std::vector<double> t) {
                 return e.envelope(f0, c, t);
             })
        .def("two_term_envelope",
             [](const OsgoodEnvelope& e, double f0, double c, std::vector<double> t) {
                 return e.two_term_envelope(f0, c, t);
             });

    py::class_<GammaSymbol>(m, "GammaSymbol")
        .def(py::init<Multiplier>())
        .def("__call__", &GammaSymbol::operator());

    m.def("fit_constant",
          [](std::vector<double> t, std::vector<double> measured, const OsgoodEnvelope& env,
             double f0) { return fit_constant(t, measured, env, f0); });

    py::enum_<Stepper>(m, "Stepper")
        .value("RK4", Stepper::RK4)
        .value("SplitIterate", Stepper::SplitIterate);

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("grid", &SolverConfig::grid)
        .def_readwrite("multiplier", &SolverConfig::multiplier)
        .def_readwrite("stepper", &SolverConfig::stepper)
        .def_readwrite("split_iterations", &SolverConfig::split_iterations)
        .def_readwrite("t_end", &SolverConfig::t_end)
        .def_readwrite("cadence", &SolverConfig::cadence)
        .def_readwrite("s_list", &SolverConfig::s_list)
        .def_readwrite("track_bkm_integral", &SolverConfig::track_bkm_integral)
        .def_property(
            "fixed_dt", [](const SolverConfig& c) { return c.dt.fixed_dt; },
            [](SolverConfig& c, double v) { c.dt.fixed_dt = v; })
        .def_property(
            "cfl_safety", [](const SolverConfig& c) { return c.dt.cfl_safety; },
            [](SolverConfig& c, double v) { c.dt.cfl_safety = v; });

    m.def("run_euler", [](const SolverConfig& cfg, const SpectralField& omega0) {
        RunResult r = run(cfg, omega0);
        py::dict d = series_dict(r.series, cfg.s_list);
        d["final_omega"] = r.final_omega;
        d["fitted_envelope_constant"] = r.fitted_envelope_constant;
        d["steps"] = r.steps_taken;
        return d;
    });
    m.def("step_rk4", &step_rk4);
    m.def("step_split_iterate", &step_split_iterate);

    py::class_<PatchState>(m, "PatchState")
        .def_property_readonly("phi", [](const PatchState& s) { return s.phi; })
        .def_readonly("a0", &PatchState::a0)
        .def_readonly("band_width", &PatchState::band_width)
        .def_readonly("t", &PatchState::t);

    m.def("make_circle_patch", &make_circle_patch, py::arg("grid"), py::arg("a0"),
          py::arg("radius"), py::arg("profile_width_cells") = 8.0);
    m.def("make_ellipse_patch", &make_ellipse_patch, py::arg("grid"), py::arg("a0"),
          py::arg("semi_x"), py::arg("semi_y"), py::arg("profile_width_cells") = 8.0);
    m.def("make_band_patch", &make_band_patch, py::arg("grid"), py::arg("a0"),
          py::arg("half_width"), py::arg("profile_width_cells") = 8.0);
    m.def("patch_velocity", &patch_velocity);
    m.def("patch_area", &patch_area);
    m.def("tangential_gradient_sup", [](const PatchState& s, const Multiplier& mult, double mu,
                                        std::uint64_t seed) {
        TangentialReport r = tangential_gradient_sup(s, mult, mu, seed);
        py::dict d;
        d["tangential_sup"] = r.tangential_sup;
        d["band_grad_sup"] = r.band_grad_sup;
        d["delta_mu"] = r.delta_mu;
        d["normalized_ratio"] = r.normalized_ratio;
        return d;
    });
    m.def("arc_measure", [](const PatchState& s, double x0, double y0, std::vector<double> rhos,
                            double mu, int samples) {
        ArcMeasureTable t = arc_measure(s, Vec2{x0, y0}, rhos, mu, samples);
        py::dict d;
        d["d"] = t.d;
        d["delta_mu"] = t.delta_mu;
        std::vector<double> rho, measure, bound;
        for (const auto& row : t.rows) {
            rho.push_back(row.rho);
            measure.push_back(row.measure);
            bound.push_back(row.bound);
        }
        d["rho"] = rho;
        d["measure"] = measure;
        d["bound"] = bound;
        return d;
    }, py::arg("state"), py::arg("x0"), py::arg("y0"), py::arg("rhos"), py::arg("mu") = 1.0,
       py::arg("samples") = 4096);

    py::class_<PatchRunConfig>(m, "PatchRunConfig")
        .def(py::init<>())
        .def_readwrite("multiplier", &PatchRunConfig::multiplier)
        .def_readwrite("t_end", &PatchRunConfig::t_end)
        .def_readwrite("cadence", &PatchRunConfig::cadence)
        .def_readwrite("mu", &PatchRunConfig::mu)
        .def_readwrite("epsilon_losing", &PatchRunConfig::epsilon_losing)
        .def_readwrite("seed", &PatchRunConfig::seed);

    m.def("run_patch", [](const PatchState& s, const PatchRunConfig& cfg) {
        PatchRunResult r = run_patch(s, cfg);
        py::dict d;
        std::vector<double> t, area, grad_inf, delta_mu, delta_gamma, tang, v, mu_t;
        for (const auto& rec : r.records) {
            t.push_back(rec.t);
            area.push_back(rec.area);
            grad_inf.push_back(rec.grad_inf);
            delta_mu.push_back(rec.delta_mu);
            delta_gamma.push_back(rec.delta_gamma);
            tang.push_back(rec.tangential_sup);
            v.push_back(rec.v_accum);
            mu_t.push_back(rec.mu_t);
        }
        d["t"] = t;
        d["area"] = area;
        d["grad_inf"] = grad_inf;
        d["delta_mu"] = delta_mu;
        d["delta_gamma"] = delta_gamma;
        d["tangential_sup"] = tang;
        d["V"] = v;
        d["mu_t"] = mu_t;
        d["eta"] = r.eta;
        d["final_state"] = r.final_state;
        d["regularity_lost"] = r.regularity_lost;
        d["blew_up"] = r.blew_up;
        return d;
    });
    m.def("boundary_displacement", &boundary_displacement, py::arg("phi0"), py::arg("phi1"),
          py::arg("n_rays") = 256);

    m.def("bessel_j0", &bessel_j0);
    m.def("bessel_j0_zero", &bessel_j0_zero);
    m.def("compute_radial_kernel", [](const Multiplier& mult, std::vector<double> rhos,
                                      int nodes) {
        KernelTable t = compute_radial_kernel(mult, rhos, nodes);
        py::dict d;
        std::vector<double> rho, f, d1, d2, maj;
        for (const auto& row : t.rows) {
            rho.push_back(row.rho);
            f.push_back(row.f_hat);
            d1.push_back(row.f_hat_d1);
            d2.push_back(row.f_hat_d2);
            maj.push_back(row.majorant_ratio);
        }
        d["rho"] = rho;
        d["f_hat"] = f;
        d["f_hat_d1"] = d1;
        d["f_hat_d2"] = d2;
        d["majorant_ratio"] = maj;
        d["majorant_sup"] = t.majorant_sup;
        d["log_slope"] = t.log_slope;
        return d;
    }, py::arg("multiplier"), py::arg("rhos"), py::arg("nodes_per_interval") = 16);

    py::class_<FieldCorpus>(m, "FieldCorpus")
        .def(py::init<const Grid&, int, std::uint64_t, double, double>(), py::arg("grid"),
             py::arg("count"), py::arg("seed"), py::arg("spectral_slope") = -1.0,
             py::arg("cutoff_fraction") = 1.0)
        .def("field", &FieldCorpus::field)
        .def_property_readonly("count", &FieldCorpus::count);

    m.def("main_inequality_ratio", [](const SpectralField& g, const Multiplier& mult, double s,
                                      const std::string& op, const LPPartition& part) {
        InequalitySample smp = main_inequality_ratio(g, mult, s, cz_operator_from_string(op), part);
        py::dict d;
        d["ratio"] = smp.ratio;
        d["lhs"] = smp.lhs;
        d["rhs"] = smp.rhs;
        d["Q"] = smp.q;
        d["q_clamped"] = smp.q_clamped;
        return d;
    });
    m.def("commutator_ratio", &commutator_ratio);

    m.def("list_scenarios", &bundled_scenario_names);
    m.def("validate_scenario", &validate_scenario);
    m.def("run_scenario", [](const std::string& name, std::optional<std::string> output,
                             std::optional<int> threads, std::optional<std::uint64_t> seed) {
        ScenarioOverrides o;
        o.output = std::move(output);
        o.threads = threads;
        o.seed = seed;
        ScenarioResult r = run_scenario(name, o);
        py::dict d;
        d["exit_code"] = r.exit_code;
        d["output_dir"] = r.output_dir;
        d["report_json"] = r.report_json;
        return d;
    }, py::arg("name"), py::arg("output") = std::nullopt, py::arg("threads") = std::nullopt,
       py::arg("seed") = std::nullopt);
}
