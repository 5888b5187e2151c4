#include "supercrit/patch.hpp"

#include "supercrit/interp.hpp"
#include "supercrit/lp.hpp"
#include "supercrit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace supercrit {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrapped_delta(double a, double l) {
    a = std::fmod(a, l);
    if (a < -0.5 * l) a += l;
    if (a > 0.5 * l) a -= l;
    return a;
}

PatchState make_state(const Grid& g, double a0, double profile_width_cells) {
    PatchState s;
    s.phi = SpectralField(g);
    s.a0 = a0;
    s.profile_width = profile_width_cells * g.spacing();
    // Band = points within ~6 cells of the boundary. The threshold is the
    // phi value of that distance contour, w tanh(6h/w); it sits strictly
    // below the tanh saturation plateau w, so the far field (where
    // grad phi ~ 0) can never leak into the band.
    s.band_width = s.profile_width * std::tanh(6.0 * g.spacing() / s.profile_width);
    s.epsilon_smooth = 2.0 * g.spacing();
    return s;
}

}  // namespace

PatchState make_circle_patch(const Grid& g, double a0, double radius,
                             double profile_width_cells) {
    if (!(radius > 0.0) || radius > 0.375 * g.length)
        throw std::invalid_argument("make_circle_patch: radius must fit inside the margin");
    PatchState s = make_state(g, a0, profile_width_cells);
    const double c = 0.5 * g.length, w = s.profile_width;
    s.phi.fill([&](double x, double y) {
        double r = std::hypot(wrapped_delta(x - c, g.length), wrapped_delta(y - c, g.length));
        return w * std::tanh((radius - r) / w);
    });
    return s;
}

PatchState make_ellipse_patch(const Grid& g, double a0, double semi_x, double semi_y,
                              double profile_width_cells) {
    if (!(semi_x > 0.0) || !(semi_y > 0.0) || std::max(semi_x, semi_y) > 0.375 * g.length)
        throw std::invalid_argument("make_ellipse_patch: semi-axes must fit inside the margin");
    PatchState s = make_state(g, a0, profile_width_cells);
    const double c = 0.5 * g.length, w = s.profile_width;
    const double scale = std::min(semi_x, semi_y);  // |grad phi| <= ~1 at the boundary
    s.phi.fill([&](double x, double y) {
        double dx = wrapped_delta(x - c, g.length), dy = wrapped_delta(y - c, g.length);
        double q = std::sqrt((dx / semi_x) * (dx / semi_x) + (dy / semi_y) * (dy / semi_y));
        return w * std::tanh(scale * (1.0 - q) / w);
    });
    return s;
}

PatchState make_band_patch(const Grid& g, double a0, double half_width,
                           double profile_width_cells) {
    if (!(half_width > 0.0) || half_width > 0.375 * g.length)
        throw std::invalid_argument("make_band_patch: half width out of range");
    PatchState s = make_state(g, a0, profile_width_cells);
    const double c = 0.5 * g.length, w = s.profile_width;
    s.phi.fill([&](double, double y) {
        return w * std::tanh((half_width - std::abs(wrapped_delta(y - c, g.length))) / w);
    });
    return s;
}

SpectralField patch_indicator(const PatchState& s) {
    const Grid& g = s.phi.grid();
    SpectralField w(g);
    double* wp = w.phys();
    const double* pp = s.phi.phys();
    const double inv_eps = 1.0 / s.epsilon_smooth;
    const std::size_t total = std::size_t(g.n) * g.n;
    for (std::size_t i = 0; i < total; ++i)
        wp[i] = s.a0 * 0.5 * (1.0 + std::tanh(pp[i] * inv_eps));
    return w;
}

double patch_area(const PatchState& s) {
    SpectralField ind = patch_indicator(s);
    const double* p = ind.phys();
    const Grid& g = s.phi.grid();
    double acc = 0.0;
    for (std::size_t i = 0; i < std::size_t(g.n) * g.n; ++i) acc += p[i];
    return acc * g.spacing() * g.spacing() / s.a0;
}

std::vector<std::size_t> band_cells(const PatchState& s) {
    const double* p = s.phi.phys();
    const Grid& g = s.phi.grid();
    std::vector<std::size_t> cells;
    for (std::size_t i = 0; i < std::size_t(g.n) * g.n; ++i)
        if (std::abs(p[i]) < s.band_width) cells.push_back(i);
    return cells;
}

VectorField patch_velocity(const PatchState& s, const Multiplier& m) {
    const Grid& g = s.phi.grid();
    const double margin = g.length / 8.0;
    const double* p = s.phi.phys();
    const int n = g.n;
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            if (p[std::size_t(iy) * n + ix] <= 0.0) continue;
            double x = g.x(ix), y = g.x(iy);
            if (x < margin || x > g.length - margin || y < margin || y > g.length - margin)
                throw std::runtime_error("patch_velocity: patch touches the domain margin");
        }
    }
    SpectralField omega = patch_indicator(s);
    omega.subtract_mean();
    return biot_savart(omega, m);
}

double grad_inf_band(const PatchState& s) {
    VectorField gp = gradient(s.phi);
    const double* gx = gp.x.phys();
    const double* gy = gp.y.phys();
    double inf = std::numeric_limits<double>::infinity();
    for (std::size_t i : band_cells(s)) inf = std::min(inf, std::hypot(gx[i], gy[i]));
    return inf;
}

HolderEstimate grad_holder_seminorm(const PatchState& s, double mu, std::uint64_t seed,
                                    int pair_budget) {
    if (!(mu > 0.0) || !(mu <= 1.0))
        throw std::invalid_argument("grad_holder_seminorm: mu must lie in (0, 1]");
    const Grid& g = s.phi.grid();
    std::vector<std::size_t> cells = band_cells(s);
    if (cells.size() < 100)
        throw std::runtime_error("grad_holder_seminorm: band has fewer than 100 cells");

    VectorField gp = gradient(s.phi);
    Rng rng(seed);
    const int n = g.n;
    const double h = g.spacing();
    const int scales = std::max(1, int(std::floor(std::log2(s.band_width * 16.0 / h))));

    double sup = 0.0;
    int used = 0;
    for (int attempt = 0; attempt < pair_budget * 4 && used < pair_budget; ++attempt) {
        std::size_t c = cells[std::size_t(rng.uniform_int(int(cells.size())))];
        double x = g.x(int(c % std::size_t(n)));
        double y = g.x(int(c / std::size_t(n)));
        double r = h * std::ldexp(1.0, rng.uniform_int(scales)) * (0.5 + rng.uniform());
        double a = rng.uniform(0.0, 2.0 * kPi);
        double x2 = x + r * std::cos(a), y2 = y + r * std::sin(a);
        if (std::abs(bicubic_sample(s.phi, x2, y2)) >= s.band_width) continue;
        double dx = bicubic_sample(gp.x, x2, y2) - bicubic_sample(gp.x, x, y);
        double dy = bicubic_sample(gp.y, x2, y2) - bicubic_sample(gp.y, x, y);
        sup = std::max(sup, std::hypot(dx, dy) / std::pow(r, mu));
        ++used;
    }

    HolderEstimate est;
    est.seminorm = sup;
    est.pairs_used = used;
    LPPartition part(g);
    est.y_proxy = std::max(besov_norms(gp.x, part, mu).y_norm, besov_norms(gp.y, part, mu).y_norm);
    return est;
}

TangentField tangent_field(const PatchState& s) {
    VectorField gp = gradient(s.phi);
    const double* gx = gp.x.phys();
    const double* gy = gp.y.phys();
    TangentField tf;
    tf.cells = band_cells(s);
    tf.tx.reserve(tf.cells.size());
    tf.ty.reserve(tf.cells.size());
    for (std::size_t i : tf.cells) {
        // grad^perp phi = (-phi_y, phi_x)
        double px = -gy[i], py = gx[i];
        double norm = std::hypot(px, py);
        if (norm < 1e-30) norm = 1.0;
        tf.tx.push_back(px / norm);
        tf.ty.push_back(py / norm);
    }
    return tf;
}

TangentialReport tangential_gradient_sup(const PatchState& s, const Multiplier& m, double mu,
                                         std::uint64_t seed) {
    SpectralField omega = patch_indicator(s);
    omega.subtract_mean();
    VelocityGradient vg = velocity_gradient(omega, m);
    TangentField tf = tangent_field(s);

    const double* axx = vg.dux_dx.phys();
    const double* axy = vg.dux_dy.phys();
    const double* ayx = vg.duy_dx.phys();
    const double* ayy = vg.duy_dy.phys();

    TangentialReport rep;
    for (std::size_t idx = 0; idx < tf.cells.size(); ++idx) {
        std::size_t i = tf.cells[idx];
        double tx = tf.tx[idx], ty = tf.ty[idx];
        // <grad(u) tau, tau> with (grad u)_{ij} = d_j u_i
        double v = tx * (axx[i] * tx + axy[i] * ty) + ty * (ayx[i] * tx + ayy[i] * ty);
        rep.tangential_sup = std::max(rep.tangential_sup, std::abs(v));
        rep.band_grad_sup =
            std::max(rep.band_grad_sup, operator_norm_2x2(axx[i], axy[i], ayx[i], ayy[i]));
    }

    rep.grad_inf = grad_inf_band(s);
    rep.grad_holder = grad_holder_seminorm(s, mu, seed).seminorm;
    rep.delta_mu = rep.grad_holder / rep.grad_inf;
    double dm = std::max(rep.delta_mu, 1.0 + 1e-12);
    rep.normalized_ratio = rep.tangential_sup / (1.0 + m(dm) * std::log(dm));
    return rep;
}

namespace {

// Closest-point iteration onto {phi = 0} from x0.
bool project_to_boundary(const PatchState& s, const VectorField& gp, Vec2 x0, Vec2& out) {
    const Grid& g = s.phi.grid();
    Vec2 p = x0;
    for (int it = 0; it < 60; ++it) {
        double v = bicubic_sample(s.phi, p.x, p.y);
        double gx = bicubic_sample(gp.x, p.x, p.y);
        double gy = bicubic_sample(gp.y, p.x, p.y);
        double g2 = gx * gx + gy * gy;
        if (g2 < 1e-20) return false;
        p.x -= v * gx / g2;
        p.y -= v * gy / g2;
        if (std::abs(v) < 1e-12 * std::max(1.0, s.band_width)) break;
    }
    double v = bicubic_sample(s.phi, p.x, p.y);
    if (std::abs(v) > 1e-6 * s.band_width) return false;
    p.x = std::fmod(p.x + g.length, g.length);
    p.y = std::fmod(p.y + g.length, g.length);
    out = p;
    return true;
}

}  // namespace

ArcMeasureTable arc_measure(const PatchState& s, Vec2 x0, std::span<const double> rhos, double mu,
                            int circle_samples, std::uint64_t seed) {
    if (!(mu > 0.0) || !(mu <= 1.0)) throw std::invalid_argument("arc_measure: mu in (0,1]");
    const Grid& g = s.phi.grid();
    if (std::abs(bicubic_sample(s.phi, x0.x, x0.y)) >= s.band_width)
        throw std::runtime_error("arc_measure: x0 has no boundary point within the band");

    VectorField gp = gradient(s.phi);
    ArcMeasureTable table;
    table.x0 = x0;
    if (!project_to_boundary(s, gp, x0, table.boundary_point))
        throw std::runtime_error("arc_measure: closest-point iteration failed");
    table.d = std::hypot(wrapped_delta(table.boundary_point.x - x0.x, g.length),
                         wrapped_delta(table.boundary_point.y - x0.y, g.length));

    HolderEstimate he = grad_holder_seminorm(s, mu, seed);
    table.delta_mu = he.seminorm / grad_inf_band(s);
    table.delta = std::pow(1.0 / (2.0 * std::max(table.delta_mu, 1e-12)), 1.0 / mu);

    double nx = bicubic_sample(gp.x, table.boundary_point.x, table.boundary_point.y);
    double ny = bicubic_sample(gp.y, table.boundary_point.x, table.boundary_point.y);
    double nn = std::hypot(nx, ny);
    if (nn < 1e-20) throw std::runtime_error("arc_measure: degenerate gradient at boundary");
    nx /= nn;
    ny /= nn;

    for (double rho : rhos) {
        if (rho < table.d * (1.0 - 1e-9))
            throw std::invalid_argument("arc_measure: rho must be >= d(x0)");
        int mismatches = 0;
        for (int i = 0; i < circle_samples; ++i) {
            double a = 2.0 * kPi * (i + 0.5) / circle_samples;
            double zx = std::cos(a), zy = std::sin(a);
            bool in_e = bicubic_sample(s.phi, x0.x + rho * zx, x0.y + rho * zy) > 0.0;
            bool in_half = (nx * zx + ny * zy) >= 0.0;  // grad phi points into E
            if (in_e != in_half) ++mismatches;
        }
        ArcMeasureRow row;
        row.rho = rho;
        row.measure = 2.0 * kPi * double(mismatches) / circle_samples;
        row.bound = 2.0 * kPi * ((1.0 + std::pow(2.0, mu)) * table.d / rho +
                                 std::pow(2.0, mu) * std::pow(rho / mu, mu));
        table.rows.push_back(row);
    }
    return table;
}

namespace {

SpectralField patch_rhs(const PatchState& base, const SpectralField& phi, const Multiplier& m) {
    PatchState stage = base;
    stage.phi = phi;
    VectorField u = patch_velocity(stage, m);
    SpectralField gx = derivative(phi, 0);
    SpectralField gy = derivative(phi, 1);
    const double* ux = u.x.phys();
    const double* uy = u.y.phys();
    const double* ax = gx.phys();
    const double* ay = gy.phys();
    SpectralField rhs(phi.grid());
    double* rp = rhs.phys();
    const std::size_t total = std::size_t(phi.n()) * phi.n();
    for (std::size_t i = 0; i < total; ++i) rp[i] = -(ux[i] * ax[i] + uy[i] * ay[i]);
    dealias_in_place(rhs);
    rhs.spec()[0] = 0.0;
    rhs.mark_phys_dirty();
    return rhs;
}

}  // namespace

PatchState patch_step(const PatchState& s, const PatchRunConfig& config, double dt) {
    PatchState out = s;
    if (config.stepper == Stepper::RK4) {
        SpectralField k1 = patch_rhs(s, s.phi, config.multiplier);
        SpectralField s2 = k1;
        s2 *= 0.5 * dt;
        s2 += s.phi;
        SpectralField k2 = patch_rhs(s, s2, config.multiplier);
        SpectralField s3 = k2;
        s3 *= 0.5 * dt;
        s3 += s.phi;
        SpectralField k3 = patch_rhs(s, s3, config.multiplier);
        SpectralField s4 = k3;
        s4 *= dt;
        s4 += s.phi;
        SpectralField k4 = patch_rhs(s, s4, config.multiplier);
        double* op = out.phi.phys();
        const double* p1 = k1.phys();
        const double* p2 = k2.phys();
        const double* p3 = k3.phys();
        const double* p4 = k4.phys();
        const std::size_t total = std::size_t(s.phi.n()) * s.phi.n();
        const double w = dt / 6.0;
        for (std::size_t i = 0; i < total; ++i)
            op[i] += w * (p1[i] + 2.0 * p2[i] + 2.0 * p3[i] + p4[i]);
    } else {
        // Semi-Lagrangian with the start-of-step velocity.
        VectorField u = patch_velocity(s, config.multiplier);
        const Grid& g = s.phi.grid();
        const int n = g.n;
        SpectralField next(g);
        double* np = next.phys();
        for (int iy = 0; iy < n; ++iy) {
            double y = g.x(iy);
            for (int ix = 0; ix < n; ++ix) {
                double x = g.x(ix);
                double mx = x - 0.5 * dt * bicubic_sample(u.x, x, y);
                double my = y - 0.5 * dt * bicubic_sample(u.y, x, y);
                double dx = x - dt * bicubic_sample(u.x, mx, my);
                double dy = y - dt * bicubic_sample(u.y, mx, my);
                np[std::size_t(iy) * n + ix] = bicubic_sample(s.phi, dx, dy);
            }
        }
        out.phi = std::move(next);
    }
    out.t = s.t + dt;
    return out;
}

namespace {

PatchRecord make_patch_record(const PatchState& s, const PatchRunConfig& cfg) {
    PatchRecord rec;
    rec.t = s.t;
    rec.area = patch_area(s);
    rec.grad_inf = grad_inf_band(s);
    double gamma = cfg.mu - cfg.epsilon_losing;
    if (!(gamma > 0.0))
        throw std::invalid_argument("run_patch: mu - epsilon must stay positive");
    rec.grad_holder_mu = grad_holder_seminorm(s, cfg.mu, cfg.seed, cfg.pair_budget).seminorm;
    rec.grad_holder_gamma = grad_holder_seminorm(s, gamma, cfg.seed + 1, cfg.pair_budget).seminorm;
    rec.delta_mu = rec.grad_holder_mu / rec.grad_inf;
    rec.delta_gamma = rec.grad_holder_gamma / rec.grad_inf;
    TangentialReport tr = tangential_gradient_sup(s, cfg.multiplier, cfg.mu, cfg.seed + 2);
    rec.tangential_sup = tr.tangential_sup;
    rec.grad_u_band_sup = tr.band_grad_sup;
    return rec;
}

}  // namespace

double boundary_displacement(const SpectralField& phi0, const SpectralField& phi1, int n_rays) {
    const Grid& g = phi0.grid();
    const double c = 0.5 * g.length;
    const double r_max = 0.46 * g.length;
    const double step = 0.5 * g.spacing();

    auto crossing = [&](const SpectralField& phi, double angle) -> double {
        double ca = std::cos(angle), sa = std::sin(angle);
        double prev = bicubic_sample(phi, c, c);
        double r_prev = 0.0;
        for (double r = step; r <= r_max; r += step) {
            double v = bicubic_sample(phi, c + r * ca, c + r * sa);
            if ((prev > 0.0) != (v > 0.0)) {
                double lo = r_prev, hi = r;
                for (int it = 0; it < 50; ++it) {
                    double mid = 0.5 * (lo + hi);
                    double vm = bicubic_sample(phi, c + mid * ca, c + mid * sa);
                    ((prev > 0.0) == (vm > 0.0) ? lo : hi) = mid;
                }
                return 0.5 * (lo + hi);
            }
            prev = v;
            r_prev = r;
        }
        return -1.0;
    };

    double worst = 0.0;
    for (int i = 0; i < n_rays; ++i) {
        double angle = 2.0 * kPi * i / n_rays;
        double r0 = crossing(phi0, angle);
        double r1 = crossing(phi1, angle);
        if (r0 < 0.0 || r1 < 0.0)
            throw std::runtime_error("boundary_displacement: no zero crossing along a ray");
        worst = std::max(worst, std::abs(r1 - r0));
    }
    return worst;
}

PatchRunResult run_patch(const PatchState& initial, const PatchRunConfig& config) {
    PatchRunResult result;
    PatchState state = initial;

    result.records.push_back(make_patch_record(state, config));
    double next_record = config.cadence;

    const Grid& g = initial.phi.grid();
    const double h = g.spacing();

    while (state.t < config.t_end - 1e-12) {
        double dt;
        if (config.dt.fixed_dt > 0.0) {
            dt = config.dt.fixed_dt;
        } else {
            double umax = patch_velocity(state, config.multiplier).max_norm();
            dt = config.dt.cfl_safety * h / std::max(umax, 1e-12);
            if (dt < 1e-10 * config.t_end) {
                result.blew_up = true;
                result.failure_time = state.t;
                result.failure_reason = "CFL collapse (velocity exploded)";
                break;
            }
        }
        double target = std::min(next_record, config.t_end);
        if (state.t + dt > target - 1e-12) dt = target - state.t;

        PatchState next = patch_step(state, config, dt);
        ++result.steps_taken;

        const double* p = next.phi.phys();
        bool finite = true;
        for (std::size_t i = 0; i < std::size_t(g.n) * g.n && finite; ++i)
            finite = std::isfinite(p[i]);
        if (!finite) {
            result.blew_up = true;
            result.failure_time = next.t;
            result.failure_reason = "non-finite level set";
            break;
        }
        state = std::move(next);

        if (state.t >= next_record - 1e-12) {
            PatchRecord rec = make_patch_record(state, config);
            if (rec.grad_inf < state.grad_floor) {
                result.regularity_lost = true;
                result.failure_time = state.t;
                result.failure_reason = "patch regularity lost (|grad phi| under floor)";
                result.records.push_back(rec);
                break;
            }
            result.records.push_back(rec);
            next_record += config.cadence;
        }
    }

    // V(t) by trapezoid over records, then the losing-exponent bookkeeping
    // mu_t = mu - eta V(t) with eta = eps / V(T).
    auto g_of = [](const PatchRecord& r) {
        return 1.0 + std::log(std::max(r.delta_gamma, 1.0));
    };
    for (std::size_t i = 1; i < result.records.size(); ++i) {
        const PatchRecord& a = result.records[i - 1];
        PatchRecord& b = result.records[i];
        b.v_accum = a.v_accum + 0.5 * (g_of(a) + g_of(b)) * (b.t - a.t);
    }
    double v_total = result.records.back().v_accum;
    result.eta = v_total > 0.0 ? config.epsilon_losing / v_total : 0.0;
    for (auto& r : result.records) r.mu_t = config.mu - result.eta * r.v_accum;

    result.final_state = std::move(state);
    return result;
}

}  // namespace supercrit
