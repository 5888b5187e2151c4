#include "supercrit/euler.hpp"

#include "supercrit/interp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace supercrit {

void SolverConfig::validate() const {
    if (!(dt.cfl_safety > 0.0) || !(dt.cfl_safety <= 1.0))
        throw std::invalid_argument("SolverConfig: CFL safety must lie in (0, 1]");
    if (!(t_end > 0.0)) throw std::invalid_argument("SolverConfig: t_end must be positive");
    if (!(cadence > 0.0)) throw std::invalid_argument("SolverConfig: cadence must be positive");
    if (s_list.empty()) throw std::invalid_argument("SolverConfig: s list must not be empty");
    for (double s : s_list)
        if (!(s > 0.0) || !(s <= 1.0))
            throw std::invalid_argument("SolverConfig: s values must lie in (0, 1]");
    if (stepper == Stepper::SplitIterate && split_iterations < 1)
        throw std::invalid_argument("SolverConfig: split iterations must be >= 1");
}

namespace {

bool finite_field(const SpectralField& f) {
    const double* p = f.phys();
    for (std::size_t i = 0; i < std::size_t(f.n()) * f.n(); ++i)
        if (!std::isfinite(p[i])) return false;
    return true;
}

// -dealias(u . grad omega) with the zero mode pinned to 0.
SpectralField advection_rhs(const SpectralField& omega, const Multiplier& m) {
    VectorField u = biot_savart(omega, m);
    SpectralField gx = derivative(omega, 0);
    SpectralField gy = derivative(omega, 1);
    const double* ux = u.x.phys();
    const double* uy = u.y.phys();
    const double* ax = gx.phys();
    const double* ay = gy.phys();
    SpectralField rhs(omega.grid());
    double* rp = rhs.phys();
    const std::size_t total = std::size_t(omega.n()) * omega.n();
    for (std::size_t i = 0; i < total; ++i) rp[i] = -(ux[i] * ax[i] + uy[i] * ay[i]);
    dealias_in_place(rhs);
    rhs.spec()[0] = 0.0;  // advection cannot move the mean
    rhs.mark_phys_dirty();
    return rhs;
}

}  // namespace

SpectralField step_rk4(const SpectralField& omega, const SolverConfig& config, double dt) {
    const Multiplier& m = config.multiplier;
    SpectralField k1 = advection_rhs(omega, m);

    SpectralField s2 = k1;
    s2 *= 0.5 * dt;
    s2 += omega;
    SpectralField k2 = advection_rhs(s2, m);

    SpectralField s3 = k2;
    s3 *= 0.5 * dt;
    s3 += omega;
    SpectralField k3 = advection_rhs(s3, m);

    SpectralField s4 = k3;
    s4 *= dt;
    s4 += omega;
    SpectralField k4 = advection_rhs(s4, m);

    SpectralField out = omega;
    double* op = out.phys();
    const double* p1 = k1.phys();
    const double* p2 = k2.phys();
    const double* p3 = k3.phys();
    const double* p4 = k4.phys();
    const std::size_t total = std::size_t(omega.n()) * omega.n();
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < total; ++i)
        op[i] += w * (p1[i] + 2.0 * p2[i] + 2.0 * p3[i] + p4[i]);
    return out;
}

SpectralField step_split_iterate(const SpectralField& omega, const SolverConfig& config, double dt) {
    const Multiplier& m = config.multiplier;
    const Grid& g = omega.grid();
    const int n = g.n;
    const double mean0 = omega.mean();

    VectorField u0 = biot_savart(omega, m);
    SpectralField prev = omega;

    for (int it = 0; it < config.split_iterations; ++it) {
        // Time-average the frozen velocity with the start-of-step one; the
        // first iterate reduces to u0 since prev = omega.
        VectorField ui = biot_savart(prev, m);
        SpectralField ux = u0.x;
        ux += ui.x;
        ux *= 0.5;
        SpectralField uy = u0.y;
        uy += ui.y;
        uy *= 0.5;

        SpectralField next(g);
        double* np = next.phys();
        for (int iy = 0; iy < n; ++iy) {
            double y = g.x(iy);
            for (int ix = 0; ix < n; ++ix) {
                double x = g.x(ix);
                // RK2 midpoint departure point, then bicubic pickup.
                double mx = x - 0.5 * dt * bicubic_sample(ux, x, y);
                double my = y - 0.5 * dt * bicubic_sample(uy, x, y);
                double dx = x - dt * bicubic_sample(ux, mx, my);
                double dy = y - dt * bicubic_sample(uy, mx, my);
                np[std::size_t(iy) * n + ix] = bicubic_sample(omega, dx, dy);
            }
        }
        dealias_in_place(next);
        next.spec()[0] = mean0 * double(n) * double(n);  // restore the zero mode
        next.mark_phys_dirty();
        prev = std::move(next);
    }
    return prev;
}

namespace {

DiagnosticRecord make_record(const SpectralField& omega, const SolverConfig& config,
                             const LPPartition& part, double t, double bkm_accum) {
    DiagnosticRecord rec;
    rec.t = t;
    rec.l2 = omega.l2_norm();
    rec.linf = omega.max_abs();
    LPDecomposition dec = decompose(omega, part);
    for (double s : config.s_list) {
        BesovNorms bn = besov_norms(dec, s);
        // combined proxy uses the field's own L2 norm
        rec.cs_proxy.push_back(bn.y_norm + rec.l2);
        if (rec.block_rows.empty()) rec.block_rows = bn.per_block;
    }
    VelocityGradient vg = velocity_gradient(omega, config.multiplier);
    rec.grad_u_inf = max_operator_norm(vg);
    rec.f = std::log(rec.cs_proxy.front());
    rec.bkm_integral = bkm_accum;
    if (config.track_modulus) {
        VectorField u = biot_savart(omega, config.multiplier);
        rec.modulus_table = sup_block_gradient(u, part, config.multiplier);
        rec.quasi_lipschitz =
            quasi_lipschitz_modulus(u, config.multiplier, config.modulus_seed, 256);
    }
    return rec;
}

}  // namespace

RunResult run(const SolverConfig& config, const SpectralField& omega0,
              const std::function<void(const SpectralField&, double)>& snapshot_sink) {
    config.validate();
    if (!finite_field(omega0)) throw std::invalid_argument("run: initial field not finite");

    LPPartition part(config.grid);
    RunResult result;
    result.final_omega = omega0;

    SpectralField omega = omega0;
    double t = 0.0;
    double next_record = 0.0;
    double bkm_accum = 0.0;
    double grad_prev = config.track_bkm_integral
                           ? max_operator_norm(velocity_gradient(omega, config.multiplier))
                           : 0.0;

    result.series.records.push_back(make_record(omega, config, part, t, 0.0));
    if (snapshot_sink) snapshot_sink(omega, t);
    next_record += config.cadence;

    const double h = config.grid.spacing();
    while (t < config.t_end - 1e-12) {
        double dt;
        if (config.dt.fixed_dt > 0.0) {
            dt = config.dt.fixed_dt;
        } else {
            double umax = biot_savart(omega, config.multiplier).max_norm();
            dt = config.dt.cfl_safety * h / std::max(umax, 1e-12);
            if (dt < 1e-10 * config.t_end) {
                result.series.blew_up = true;
                result.series.blow_up_time = t;
                result.series.blow_up_reason = "CFL collapse (velocity exploded)";
                break;
            }
        }
        double target = std::min(next_record, config.t_end);
        if (t + dt > target - 1e-12) dt = target - t;

        SpectralField next = config.stepper == Stepper::RK4
                                 ? step_rk4(omega, config, dt)
                                 : step_split_iterate(omega, config, dt);
        ++result.steps_taken;

        if (!finite_field(next)) {
            result.series.blew_up = true;
            result.series.blow_up_time = t + dt;
            result.series.blow_up_reason = "non-finite field";
            break;
        }
        omega = std::move(next);
        t += dt;

        if (config.track_bkm_integral) {
            double grad_now = max_operator_norm(velocity_gradient(omega, config.multiplier));
            bkm_accum += 0.5 * (grad_prev + grad_now) * dt;
            grad_prev = grad_now;
        }

        if (t >= next_record - 1e-12) {
            result.series.records.push_back(make_record(omega, config, part, t, bkm_accum));
            if (snapshot_sink) snapshot_sink(omega, t);
            bkm_accum = 0.0;
            next_record += config.cadence;
        }
    }

    result.final_omega = omega;

    // Fit the growth constant for f(t) = Log(proxy) against the
    // Gamma(r) = m(r)(1 + Log r) envelope.
    std::vector<double> ts, fs;
    for (const auto& r : result.series.records) {
        ts.push_back(r.t);
        fs.push_back(r.f);
    }
    double f0 = fs.empty() ? 0.0 : fs.front();
    result.envelope_f0 = f0;
    result.fitted_envelope_constant = std::numeric_limits<double>::quiet_NaN();
    if (f0 > 0.5 && !result.series.blew_up) {
        // Gamma(r) = m(r)(1+Log r) stays positive down to r = 1/e; 0.45 is a
        // safe table floor for any admissible f0 here. A failed fit is
        // reported as NaN rather than aborting the run.
        try {
            GammaSymbol gamma(config.multiplier);
            OsgoodEnvelope env = OsgoodEnvelope::for_gamma_symbol(gamma, 0.45, 1e300);
            result.fitted_envelope_constant = fit_constant(ts, fs, env, f0);
        } catch (const std::exception&) {
        }
    }
    return result;
}

}  // namespace supercrit
