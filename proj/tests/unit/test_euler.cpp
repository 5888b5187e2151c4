#include "supercrit/corpus.hpp"
#include "supercrit/euler.hpp"

#include <doctest.h>

#include <cmath>

using namespace supercrit;

namespace {

double rel_l2_diff(const SpectralField& a, const SpectralField& b) {
    SpectralField d = a;
    d -= b;
    return d.l2_norm() / std::max(b.l2_norm(), 1e-300);
}

SolverConfig basic_config(int n, Multiplier m = Multiplier::constant(1.0)) {
    SolverConfig sc;
    sc.grid = Grid(n, 2.0 * M_PI);
    sc.multiplier = std::move(m);
    sc.t_end = 1.0;
    sc.cadence = 0.25;
    sc.track_bkm_integral = false;
    return sc;
}

}  // namespace

TEST_CASE("cos(x) is a discrete steady state of the RK4 step") {
    for (Multiplier m : {Multiplier::constant(1.0), Multiplier::iterated_log({1.0})}) {
        SolverConfig sc = basic_config(128, m);
        SpectralField omega = make_single_mode(sc.grid, 1, 0);
        SpectralField next = step_rk4(omega, sc, 0.01);
        CHECK(rel_l2_diff(next, omega) <= 1e-10);
    }
}

TEST_CASE("radial vorticity stays fixed under both laws") {
    // Same configuration as the azimuthal-flow test: mean-free bump, roomy
    // torus, clamp under the first lattice mode for the iterated-log law.
    for (Multiplier m : {Multiplier::constant(1.0), Multiplier::iterated_log({1.0}, 0.05)}) {
        SolverConfig sc = basic_config(256, m);
        sc.grid = Grid(256, 8.0 * M_PI);
        sc.t_end = 0.25;
        SpectralField omega0 = make_radial_bump(sc.grid, 0.6, 1.0);
        RunResult rr = run(sc, omega0);
        CHECK_FALSE(rr.series.blew_up);
        CHECK(rel_l2_diff(rr.final_omega, omega0) <= 1e-8);
    }
}

TEST_CASE("L2 drift is small and shrinks at 4th order in dt") {
    SolverConfig sc = basic_config(128);
    sc.t_end = 0.5;
    FieldCorpus corpus(sc.grid, 1, 11, -1.5, 0.5);
    SpectralField omega0 = corpus.field(0);
    omega0 *= 3.0;

    auto drift_at = [&](double dt) {
        SolverConfig c = sc;
        c.dt.fixed_dt = dt;
        RunResult rr = run(c, omega0);
        return std::abs(rr.series.records.back().l2 - rr.series.records.front().l2) /
               rr.series.records.front().l2;
    };
    double d1 = drift_at(0.02);
    double d2 = drift_at(0.01);
    CHECK(d1 <= 1e-6);
    if (d1 > 1e-12) {
        double order = std::log2(d1 / d2);
        CHECK(order > 2.5);  // 4th-order stepper; conservative floor
    }
}

TEST_CASE("sup norm obeys the transport maximum principle") {
    SolverConfig sc = basic_config(128);
    sc.t_end = 1.0;
    sc.dt.cfl_safety = 0.5;
    SpectralField omega0 = make_two_vortex(sc.grid, 4.0, 0.35, 1.4);
    RunResult rr = run(sc, omega0);
    double linf0 = rr.series.records.front().linf;
    for (const auto& rec : rr.series.records) CHECK(rec.linf <= linf0 * (1.0 + 1e-3));
}

TEST_CASE("mean is untouched by advection") {
    SolverConfig sc = basic_config(64);
    FieldCorpus corpus(sc.grid, 1, 5);
    SpectralField omega = corpus.field(0);
    double* p = omega.phys();
    for (std::size_t i = 0; i < std::size_t(64) * 64; ++i) p[i] += 0.7;
    double mean0 = omega.mean();
    SpectralField cur = omega;
    for (int s = 0; s < 50; ++s) cur = step_rk4(cur, sc, 0.01);
    CHECK(std::abs(cur.mean() - mean0) <= 1e-12);
}

TEST_CASE("advance and return by velocity reversal recovers the datum") {
    SolverConfig sc = basic_config(128);
    sc.dt.fixed_dt = 0.01;
    SpectralField omega0 = make_two_vortex(sc.grid, 2.0, 0.4, 1.2);
    SpectralField cur = omega0;
    for (int s = 0; s < 50; ++s) cur = step_rk4(cur, sc, 0.01);
    cur *= -1.0;  // u is linear in omega: reversing omega reverses the flow
    for (int s = 0; s < 50; ++s) cur = step_rk4(cur, sc, 0.01);
    cur *= -1.0;
    CHECK(rel_l2_diff(cur, omega0) <= 1e-4);
}

TEST_CASE("splitting stepper") {
    SUBCASE("identity on a zero field") {
        SolverConfig sc = basic_config(64);
        sc.stepper = Stepper::SplitIterate;
        sc.split_iterations = 1;
        SpectralField zero(sc.grid, 0.0);
        SpectralField next = step_split_iterate(zero, sc, 0.05);
        CHECK(next.max_abs() == 0.0);
    }

    SUBCASE("stationary datum stays for any iteration count") {
        SolverConfig sc = basic_config(128);
        sc.stepper = Stepper::SplitIterate;
        SpectralField omega = make_single_mode(sc.grid, 1, 0);
        for (int k : {1, 2, 4}) {
            sc.split_iterations = k;
            SpectralField next = step_split_iterate(omega, sc, 0.02);
            CHECK(rel_l2_diff(next, omega) <= 1e-8);
        }
    }

    SUBCASE("agrees with RK4 at second order under dt halving") {
        // parameters put the dt^2 splitting error well above the bicubic
        // interpolation floor (which grows like h^4 steps ~ h^4/dt)
        SolverConfig sc = basic_config(128);
        sc.split_iterations = 3;
        FieldCorpus corpus(sc.grid, 1, 21, -1.0, 0.1);
        SpectralField omega0 = corpus.field(0);
        omega0 *= 6.0;

        auto gap_at = [&](double dt) {
            SpectralField a = omega0, b = omega0;
            int steps = int(std::round(0.4 / dt));
            for (int s = 0; s < steps; ++s) {
                a = step_rk4(a, sc, dt);
                b = step_split_iterate(b, sc, dt);
            }
            return rel_l2_diff(b, a);
        };
        double g1 = gap_at(0.1);
        double g2 = gap_at(0.05);
        double order = std::log2(g1 / g2);
        CHECK(order > 1.5);
        CHECK(order < 3.2);
    }
}

TEST_CASE("run records diagnostics and fits the growth envelope") {
    SolverConfig sc = basic_config(128);
    sc.t_end = 0.5;
    sc.cadence = 0.1;
    sc.s_list = {0.5, 0.25};
    sc.track_bkm_integral = true;
    SpectralField omega0 = make_two_vortex(sc.grid, 4.0, 0.35, 1.4);
    RunResult rr = run(sc, omega0);

    REQUIRE(rr.series.records.size() == 6);
    double prev_t = -1.0;
    for (const auto& rec : rr.series.records) {
        CHECK(rec.t > prev_t);
        prev_t = rec.t;
        CHECK(std::isfinite(rec.l2));
        CHECK(rec.cs_proxy.size() == 2);
        CHECK(rec.f == doctest::Approx(std::log(rec.cs_proxy[0])));
        CHECK(std::isfinite(rec.grad_u_inf));
    }
    CHECK(std::isfinite(rr.fitted_envelope_constant));
    CHECK(rr.fitted_envelope_constant >= 1e-6);

    // BKM consistency on this short run: interval growth of Log(proxy)
    // bounded by the accumulated gradient integral plus 10 percent.
    const auto& recs = rr.series.records;
    for (std::size_t i = 1; i < recs.size(); ++i) {
        double dlog = std::log(recs[i].cs_proxy[0]) - std::log(recs[i - 1].cs_proxy[0]);
        CHECK(dlog <= 1.1 * recs[i].bkm_integral + 1e-9);
    }
}

TEST_CASE("stationary run fits the envelope at the bracket bottom") {
    SolverConfig sc = basic_config(128);
    sc.t_end = 0.5;
    SpectralField omega = make_single_mode(sc.grid, 1, 0, 20.0);  // proxy > e so f0 > 1
    RunResult rr = run(sc, omega);
    CHECK(rr.fitted_envelope_constant <= 1e-5);
}

TEST_CASE("gross CFL violation is flagged as blow-up, not a crash") {
    SolverConfig sc = basic_config(64);
    sc.dt.fixed_dt = 5.0;
    sc.t_end = 100.0;
    sc.cadence = 50.0;
    FieldCorpus corpus(sc.grid, 1, 3);
    SpectralField omega0 = corpus.field(0);
    omega0 *= 10.0;
    RunResult rr = run(sc, omega0);
    CHECK(rr.series.blew_up);
    CHECK_FALSE(rr.series.records.empty());
}

TEST_CASE("larger multipliers never shrink the block gradient table") {
    Grid g(128, 2.0 * M_PI);
    LPPartition part(g);
    // pointwise ordered trio: 1 <= max(1, loglog) <= 2 max(1, loglog)
    std::vector<double> r = log_grid(0.5, 1e14, 32);
    Multiplier loglog = Multiplier::iterated_log({1.0});
    std::vector<double> v1, v2;
    for (double x : r) {
        double mv = std::max(1.0, loglog(x));
        v1.push_back(mv);
        v2.push_back(2.0 * mv);
    }
    Multiplier mid = Multiplier::user_table(r, v1);
    Multiplier big = Multiplier::user_table(r, v2);
    Multiplier one = Multiplier::constant(1.0);
    for (double x : log_grid(2.0, 100.0, 8)) {
        CHECK(one(x) <= mid(x) * (1.0 + 1e-12));
        CHECK(mid(x) <= big(x) * (1.0 + 1e-12));
    }

    FieldCorpus corpus(g, 3, 8);
    for (int i = 0; i < 3; ++i) {
        SpectralField omega = corpus.field(i);
        auto t0 = sup_block_gradient(biot_savart(omega, one), part, one);
        auto t1 = sup_block_gradient(biot_savart(omega, mid), part, mid);
        auto t2 = sup_block_gradient(biot_savart(omega, big), part, big);
        for (std::size_t j = 0; j < t0.size(); ++j) {
            // raw sups (un-normalized): multiply back by m(2^j)
            double m0 = one(std::ldexp(1.0, t0[j].first));
            double m1 = mid(std::ldexp(1.0, t1[j].first));
            double m2 = big(std::ldexp(1.0, t2[j].first));
            CHECK(t0[j].second * m0 <= t1[j].second * m1 * (1.0 + 1e-10));
            CHECK(t1[j].second * m1 <= t2[j].second * m2 * (1.0 + 1e-10));
        }
    }
}
