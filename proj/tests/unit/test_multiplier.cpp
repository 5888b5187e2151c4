#include "supercrit/multiplier.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

using namespace supercrit;

TEST_CASE("constant symbol is exact") {
    Multiplier m = Multiplier::constant(1.0);
    CHECK(m(1000.0) == 1.0);
    CHECK(m(0.0) == 1.0);
    Multiplier m3 = Multiplier::constant(3.5);
    CHECK(m3(7.0) == 3.5);
}

TEST_CASE("iterated-log with zero exponent is identically one") {
    Multiplier m = Multiplier::iterated_log({0.0});
    for (double r : {0.0, 1.0, 17.0, 1e6, 1e12}) CHECK(m(r) == 1.0);
}

TEST_CASE("iterated-log matches a high-precision closed-form evaluation") {
    // Oracle: the closed form evaluated in extended precision, written out
    // independently of the production loop.
    Multiplier m = Multiplier::iterated_log({1.0});
    for (double r : log_grid(2.0, 1e10, 4)) {
        long double rl = r;
        long double oracle = logl(1.0L + logl(rl * rl + 1.0L));
        CHECK(std::abs(m(r) - double(oracle)) <= 1e-12 * double(oracle));
    }
    // Two factors, fractional exponents.
    Multiplier m2 = Multiplier::iterated_log({1.0, 0.5});
    for (double r : log_grid(2.0, 1e8, 3)) {
        long double a1 = logl((long double)r * r + 1.0L);
        long double f1 = logl(1.0L + a1);
        long double f2 = logl(1.0L + logl(1.0L + a1));
        long double oracle = f1 * powl(f2, 0.5L);
        CHECK(std::abs(m2(r) - double(oracle)) <= 1e-12 * double(oracle));
    }
}

TEST_CASE("clamp floor freezes the symbol at low frequency") {
    Multiplier m = Multiplier::iterated_log({1.0});
    CHECK(m(0.0) == m(2.0));
    CHECK(m(1.0) == m(2.0));
    CHECK(m(2.5) > m(2.0));
}

TEST_CASE("user table interpolates power laws exactly and rejects out-of-range") {
    std::vector<double> r, v;
    for (double x = 0.5; x <= 1e13; x *= 10.0) {
        r.push_back(x);
        v.push_back(x);
    }
    Multiplier m = Multiplier::user_table(r, v);
    // log-log linear interpolation reproduces m(r) = r exactly
    CHECK(m(300.0) == doctest::Approx(300.0).epsilon(1e-13));
    CHECK(m(7777.0) == doctest::Approx(7777.0).epsilon(1e-13));
    CHECK_THROWS_WITH_AS(m(1e14), doctest::Contains("outside its range"), std::out_of_range);
}

TEST_CASE("eval is non-decreasing above the clamp for all built-in kinds") {
    std::vector<Multiplier> kinds = {
        Multiplier::constant(2.0),
        Multiplier::iterated_log({1.0}),
        Multiplier::iterated_log({0.5, 0.5}),
        Multiplier::iterated_log({1.0, 1.0, 1.0}),
    };
    for (const auto& m : kinds) {
        double prev = 0.0;
        for (double r : log_grid(2.0, 1e12, 64)) {
            double cur = m(r);
            CHECK(cur >= prev - 1e-12);
            CHECK(cur > 0.0);
            prev = cur;
        }
    }
}

TEST_CASE("check_hypotheses reports the pinned doubling constants") {
    SUBCASE("constant symbol doubles with constant exactly 1") {
        HypothesisReport rep = check_hypotheses(Multiplier::constant(1.0));
        CHECK(rep.doubling_constant == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(rep.nondecreasing);
    }
    SUBCASE("iterated-log doubling stays under 2 on [1, 1e12]") {
        HypothesisReport rep =
            check_hypotheses(Multiplier::iterated_log({1.0}), log_grid(1.0, 1e12, 128));
        CHECK(rep.doubling_constant <= 2.0);
        CHECK(rep.doubling_constant >= 1.0);
        CHECK(std::isfinite(rep.submult_constant));
        CHECK(std::isfinite(rep.log_growth_constant));
    }
    SUBCASE("linear table doubles with constant exactly 2") {
        std::vector<double> r, v;
        for (double x = 0.5; x <= 1e14; x *= 10.0) {
            r.push_back(x);
            v.push_back(x);
        }
        HypothesisReport rep =
            check_hypotheses(Multiplier::user_table(r, v), log_grid(1.0, 1e12, 128));
        CHECK(rep.doubling_constant == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("iterated logs double more slowly than the linear table on any grid") {
    std::vector<double> r, v;
    for (double x = 0.5; x <= 1e14; x *= 10.0) {
        r.push_back(x);
        v.push_back(x);
    }
    Multiplier linear = Multiplier::user_table(r, v);
    Multiplier loglog = Multiplier::iterated_log({1.0});
    for (auto [lo, hi] : std::vector<std::pair<double, double>>{{1.0, 1e9}, {2.0, 1e12}, {10.0, 1e11}}) {
        double d_log = check_hypotheses(loglog, log_grid(lo, hi, 100)).doubling_constant;
        double d_lin = check_hypotheses(linear, log_grid(lo, hi, 100)).doubling_constant;
        CHECK(d_log <= d_lin + 1e-12);
    }
}

TEST_CASE("non-monotone user table violates the standing hypothesis") {
    Multiplier bad = Multiplier::user_table({0.5, 2.0, 20.0, 200.0, 2e3, 2e4, 2e5, 2e6, 2e7, 2e8},
                                            {1.0, 1.0, 5.0, 2.0, 6.0, 7.0, 8.0, 9.0, 10.0, 11.0});
    CHECK_THROWS_AS(check_hypotheses(bad, log_grid(1.0, 1e8, 32)), std::runtime_error);
}

TEST_CASE("osgood tail integral closed forms") {
    std::vector<double> limits;
    for (double t = 10.0; t <= 1e30 * 1.0001; t *= 10.0) limits.push_back(t);

    SUBCASE("m = 1: I(T) = LogLog T - LogLog 2, diverges") {
        OsgoodResult res = check_osgood_condition(Multiplier::constant(1.0), limits);
        CHECK(res.verdict == OsgoodVerdict::Diverges);
        for (std::size_t i = 0; i < limits.size(); ++i) {
            double expected = std::log(std::log(limits[i])) - std::log(std::log(2.0));
            CHECK(res.evidence.tail_integrals[i] == doctest::Approx(expected).epsilon(1e-8));
        }
    }

    SUBCASE("m = Log t: I(T) = 1/Log2 - 1/LogT, converges") {
        // Dense table so the interpolated symbol is closed-form accurate.
        std::vector<double> r = log_grid(1.5, 1e13, 20000);
        std::vector<double> v;
        for (double x : r) v.push_back(std::log(x));
        Multiplier m = Multiplier::user_table(r, v);
        std::vector<double> lim;
        for (double t = 10.0; t <= 1e12 * 1.0001; t *= 10.0) lim.push_back(t);
        OsgoodResult res = check_osgood_condition(m, lim);
        CHECK(res.verdict == OsgoodVerdict::Converges);
        for (std::size_t i = 0; i < lim.size(); ++i) {
            double expected = 1.0 / std::log(2.0) - 1.0 / std::log(lim[i]);
            CHECK(res.evidence.tail_integrals[i] == doctest::Approx(expected).epsilon(1e-7));
        }
    }

    SUBCASE("iterated-log diverges out to 1e30") {
        OsgoodResult res = check_osgood_condition(Multiplier::iterated_log({1.0}), limits);
        CHECK(res.verdict == OsgoodVerdict::Diverges);
        // tail keeps growing: last increment well above the Cauchy tolerance
        CHECK(res.evidence.last_increment > 1e-3);
    }

    SUBCASE("every built-in iterated-log family diverges") {
        for (auto exps : std::vector<std::vector<double>>{{0.0}, {0.3}, {1.0}, {1.0, 1.0}, {0.5, 0.5, 0.5}}) {
            OsgoodResult res = check_osgood_condition(Multiplier::iterated_log(exps), limits);
            CHECK(res.verdict == OsgoodVerdict::Diverges);
        }
    }
}

TEST_CASE("gamma symbol is positive and non-decreasing on its domain") {
    GammaSymbol g(Multiplier::iterated_log({1.0}));
    double prev = 0.0;
    for (double r : log_grid(2.0, 1e12, 64)) {
        double cur = g(r);
        CHECK(cur > 0.0);
        CHECK(cur >= prev - 1e-12);
        prev = cur;
    }
}

TEST_CASE("check_hypotheses validates its sampling grid") {
    Multiplier m = Multiplier::constant(1.0);
    CHECK_THROWS_AS(check_hypotheses(m, log_grid(1.0, 1e12, 4)), std::invalid_argument);
    CHECK_THROWS_AS(check_hypotheses(m, log_grid(1.0, 100.0, 128)), std::invalid_argument);
}
