#include "supercrit/osgood.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

using namespace supercrit;

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[std::size_t(i)] = a + (b - a) * i / (n - 1);
    return v;
}

// y' = C f0 gamma(y) residual along the curve, central differences.
double ode_residual(const OsgoodEnvelope& env, const std::vector<double>& t,
                    const std::vector<double>& y, double c, double f0) {
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
        double fd = (y[i + 1] - y[i - 1]) / (t[i + 1] - t[i - 1]);
        double rhs = c * f0 * env.gamma(y[i]);
        worst = std::max(worst, std::abs(fd - rhs) / std::max(rhs, 1e-30));
    }
    return worst;
}

}  // namespace

TEST_CASE("gamma(r) = r gives the exponential closed form") {
    OsgoodEnvelope env([](double r) { return r; }, 1.0, 1e30);
    double f0 = 2.0, c = 0.5;  // C * f0 = 1
    std::vector<double> t = linspace(0.0, 5.0, 401);
    std::vector<double> curve = env.envelope(f0, c, t);
    CHECK(curve.front() == doctest::Approx(f0).epsilon(1e-12));
    for (std::size_t i = 0; i < t.size(); ++i) {
        double exact = f0 * std::exp(t[i]);
        CHECK(std::abs(curve[i] - exact) <= 1e-6 * exact);
    }
    CHECK(ode_residual(env, t, curve, c, f0) <= 1e-4);
}

TEST_CASE("Gamma(r) = 1 + Log r gives the double exponential closed form") {
    // effective gamma(r) = r (1 + Log r); hand integration gives
    // H = Log(1 + Log r), so the bound is exp((1 + Log f0) e^{C t f0} - 1).
    GammaSymbol gamma(Multiplier::constant(1.0));
    OsgoodEnvelope env = OsgoodEnvelope::for_gamma_symbol(gamma, 1.0, 1e300);
    double f0 = 5.0, c = 0.4;
    std::vector<double> t = linspace(0.0, 2.0, 801);
    std::vector<double> curve = env.envelope(f0, c, t);
    for (std::size_t i = 0; i < t.size(); ++i) {
        double exact = std::exp((1.0 + std::log(f0)) * std::exp(c * f0 * t[i]) - 1.0);
        CHECK(std::abs(curve[i] - exact) <= 1e-6 * exact);
    }
    // residual on [0,1] with a fine grid: the curve's local exponential rate
    // times dt must stay small for central differences to resolve it
    std::vector<double> tr = linspace(0.0, 1.0, 4001);
    std::vector<double> curve_r = env.envelope(f0, c, tr);
    CHECK(ode_residual(env, tr, curve_r, c, f0) <= 1e-4);
}

TEST_CASE("H inverse inverts H on table points") {
    GammaSymbol gamma(Multiplier::iterated_log({1.0}));
    OsgoodEnvelope env = OsgoodEnvelope::for_gamma_symbol(gamma, 1.0, 1e200);
    for (double r : {1.5, 3.0, 100.0, 1e8, 1e50, 1e150}) {
        CHECK(env.H_inverse(env.H(r)) == doctest::Approx(r).epsilon(1e-8));
    }
}

TEST_CASE("iterated-log effective gamma stacks n+2 exponentials") {
    // Clean n-factor iterated-log gamma: gamma(r) = r Log r LogLog r ... ;
    // H telescopes to the (n+2)-fold iterated Log, so that many Logs of the
    // envelope are affine in t with slope C f0.
    auto iterated = [](int folds, double r) {
        double v = r;
        double prod = r;
        for (int i = 1; i < folds; ++i) {
            v = std::log(v);
            prod *= v;
        }
        return prod;  // r * Log r * ... * Log^{(folds-1)} r
    };

    struct Case {
        int n;          // iterated-log factor count in the symbol
        double a, f0, t_max, c;
    };
    for (Case cs : {Case{1, 3.0, 20.0, 0.08, 1.0}, Case{2, 16.0, 100.0, 0.0018, 1.0}}) {
        int folds = cs.n + 2;
        OsgoodEnvelope env([&, folds](double r) { return iterated(folds, r); }, cs.a, 1e280);
        std::vector<double> t = linspace(0.0, cs.t_max, 60);
        std::vector<double> curve = env.envelope(cs.f0, cs.c, t);

        // fit Log^{(folds)}(curve) against t
        std::vector<double> z;
        for (double y : curve) {
            double v = y;
            for (int i = 0; i < folds; ++i) v = std::log(v);
            z.push_back(v);
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            sx += t[i];
            sy += z[i];
            sxx += t[i] * t[i];
            sxy += t[i] * z[i];
        }
        double n = double(t.size());
        double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        CHECK(std::abs(slope - cs.c * cs.f0) <= 0.1 * cs.c * cs.f0);
    }
}

TEST_CASE("two-term envelope") {
    SUBCASE("linear gamma closed form and exact start") {
        OsgoodEnvelope env([](double r) { return r; }, 1.0, 1e300);
        double f0 = 2.0, c = 0.7;
        std::vector<double> t = linspace(0.0, 3.0, 200);
        std::vector<double> curve = env.two_term_envelope(f0, c, t);
        CHECK(curve.front() == doctest::Approx(f0).epsilon(1e-12));
        for (std::size_t i = 0; i < t.size(); ++i) {
            double exact = f0 * std::exp(c * (t[i] * t[i] + t[i]));
            CHECK(std::abs(curve[i] - exact) <= 1e-6 * exact);
        }
    }

    SUBCASE("m(exp(.)) stays on the table out to t = 10") {
        Multiplier m = Multiplier::iterated_log({1.0});
        OsgoodEnvelope env([m](double x) { return m.eval_log(x); }, 1.0, 1e4);
        CHECK(env.h_max() >= 1e3);
        std::vector<double> t = linspace(0.0, 10.0, 101);
        std::vector<double> curve = env.two_term_envelope(2.0, 1.0, t);
        for (double v : curve) CHECK(std::isfinite(v));
    }

    SUBCASE("wildly superadditive gamma is rejected") {
        OsgoodEnvelope env([](double r) { return std::exp(0.7 * r); }, 1.0, 40.0, 32);
        std::vector<double> t = linspace(0.0, 1.0, 10);
        CHECK_THROWS_AS(env.two_term_envelope(2.0, 1.0, t), std::invalid_argument);
    }
}

TEST_CASE("fit_constant") {
    OsgoodEnvelope env([](double r) { return r; }, 1.0, 1e300);
    double f0 = 2.0;
    std::vector<double> t = linspace(0.0, 2.0, 50);

    SUBCASE("recovers the generating constant") {
        std::vector<double> measured = env.envelope(f0, 2.0, t);
        double c = fit_constant(t, measured, env, f0);
        CHECK(c == doctest::Approx(2.0).epsilon(2e-3));
    }

    SUBCASE("flat data fits at the bracket bottom") {
        std::vector<double> measured(t.size(), f0);
        CHECK(fit_constant(t, measured, env, f0) == doctest::Approx(1e-6));
    }

    SUBCASE("data above the whole family throws") {
        // over a tiny horizon even C = 1e6 cannot lift the envelope to 5
        OsgoodEnvelope small([](double r) { return r; }, 1.0, 1e4);
        std::vector<double> tt = linspace(0.0, 1e-7, 5);
        std::vector<double> measured = {f0, 5.0, 5.0, 5.0, 5.0};
        CHECK_THROWS_WITH_AS(fit_constant(tt, measured, small, f0),
                             doctest::Contains("cannot dominate"), std::runtime_error);
    }

    SUBCASE("measured(0) above f0 is rejected") {
        std::vector<double> measured(t.size(), f0 * 1.01);
        CHECK_THROWS_AS(fit_constant(t, measured, env, f0), std::invalid_argument);
    }
}

TEST_CASE("envelope monotonicity in C, f0, and gamma") {
    GammaSymbol gs(Multiplier::iterated_log({1.0}));
    OsgoodEnvelope env = OsgoodEnvelope::for_gamma_symbol(gs, 1.0, 1e200);
    std::vector<double> t = linspace(0.0, 0.5, 30);

    std::vector<double> base = env.envelope(2.0, 0.5, t);
    std::vector<double> more_c = env.envelope(2.0, 0.75, t);
    std::vector<double> more_f0 = env.envelope(2.5, 0.5, t);
    OsgoodEnvelope bigger_gamma(
        [&gs](double r) { return 2.0 * r * gs(r); }, 1.0, 1e200);
    std::vector<double> more_gamma = bigger_gamma.envelope(2.0, 0.5, t);

    for (std::size_t i = 0; i < t.size(); ++i) {
        CHECK(more_c[i] >= base[i] * (1.0 - 1e-12));
        CHECK(more_f0[i] >= base[i] * (1.0 - 1e-12));
        CHECK(more_gamma[i] >= base[i] * (1.0 - 1e-12));
        if (i > 0) CHECK(base[i] >= base[i - 1] * (1.0 - 1e-12));
    }
}

TEST_CASE("table exhaustion is reported, not silently clamped") {
    OsgoodEnvelope env([](double r) { return r; }, 1.0, 1e6);
    std::vector<double> t = {0.0, 100.0};
    CHECK_THROWS_WITH_AS(env.envelope(2.0, 1.0, t), doctest::Contains("blow-up beyond tabulated"),
                         std::out_of_range);
}
