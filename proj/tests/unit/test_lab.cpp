#include "supercrit/bessel.hpp"
#include "supercrit/lab.hpp"

#include <doctest.h>

#include <cmath>

using namespace supercrit;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Oracle straight from the defining integral, by trapezoid (periodic
// integrand, spectrally accurate).
double j0_oracle(double x) {
    const int n = 4096;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        double theta = 2.0 * kPi * i / n;
        acc += std::cos(x * std::sin(theta));
    }
    return acc / n;
}

}  // namespace

TEST_CASE("bessel j0 evaluator") {
    CHECK(bessel_j0(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    for (double x = 0.0; x <= 60.0; x += 0.37)
        CHECK(bessel_j0(x) == doctest::Approx(j0_oracle(x)).epsilon(1e-8));
    // published zeros
    CHECK(std::abs(bessel_j0_zero(1) - 2.4048) <= 1e-3);
    CHECK(std::abs(bessel_j0_zero(2) - 5.5201) <= 1e-3);
    CHECK(std::abs(bessel_j0_zero(3) - 8.6537) <= 1e-3);
    for (int k = 1; k <= 200; ++k) CHECK(std::abs(bessel_j0(bessel_j0_zero(k))) <= 1e-9);
}

TEST_CASE("radial kernel tables") {
    std::vector<double> rhos;
    for (int i = 0; i < 13; ++i) rhos.push_back(1e-3 * std::pow(1000.0, i / 12.0));

    SUBCASE("m = 1 reproduces the Log fundamental solution") {
        KernelTable t = compute_radial_kernel(Multiplier::constant(1.0), rhos);
        CHECK(std::abs(t.log_slope - (-1.0 / (2.0 * kPi))) <= 0.01 / (2.0 * kPi));
        // f'' = -slope / rho^2, so the majorant ratio is |slope|/2 everywhere
        for (const auto& row : t.rows)
            CHECK(row.majorant_ratio == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-6));
    }

    SUBCASE("iterated-log kernel obeys the majorant bound stably") {
        Multiplier m = Multiplier::iterated_log({1.0});
        KernelTable coarse = compute_radial_kernel(m, rhos, 16);
        KernelTable fine = compute_radial_kernel(m, rhos, 32);
        CHECK(std::isfinite(coarse.majorant_sup));
        CHECK(std::abs(fine.majorant_sup - coarse.majorant_sup) <= 0.1 * coarse.majorant_sup);

        // no boundary artifact: dropping the endpoint rows moves the sup by
        // little (the ratio is genuinely largest toward small rho, not a
        // quadrature spike at the grid edge)
        double interior_sup = 0.0;
        for (std::size_t i = 1; i + 1 < coarse.rows.size(); ++i)
            interior_sup = std::max(interior_sup, coarse.rows[i].majorant_ratio);
        CHECK(coarse.majorant_sup <= 1.15 * interior_sup);
    }

    SUBCASE("rho outside the supported range is rejected") {
        CHECK_THROWS_AS(
            compute_radial_kernel(Multiplier::constant(1.0), std::vector<double>{1e-5}),
            std::invalid_argument);
    }
}

TEST_CASE("main inequality ratio") {
    Grid g(64, 2.0 * M_PI);
    LPPartition part(g);
    Multiplier one = Multiplier::constant(1.0);

    SUBCASE("single low mode with the identity operator is below 1") {
        SpectralField gfield = make_single_mode(g, 1, 0);
        InequalitySample s = main_inequality_ratio(gfield, one, 0.5, CzOperator::Identity, part);
        CHECK(s.ratio <= 1.0);
        CHECK(s.lhs == doctest::Approx(1.0).epsilon(1e-10));
    }

    SUBCASE("scale invariance") {
        FieldCorpus corpus(g, 1, 19);
        SpectralField gf = corpus.field(0);
        Multiplier m = Multiplier::iterated_log({1.0});
        InequalitySample a = main_inequality_ratio(gf, m, 0.5, CzOperator::Riesz12, part);
        SpectralField scaled = gf;
        scaled *= 137.0;
        InequalitySample b = main_inequality_ratio(scaled, m, 0.5, CzOperator::Riesz12, part);
        CHECK(std::abs(a.ratio - b.ratio) <= 1e-10 * a.ratio);
    }

    SUBCASE("Q below 1 is clamped and reported") {
        // |k| = 1/2 mode sits in the chi block, so Y = 2^{-s} Linf < Linf
        Grid g2(64, 4.0 * M_PI);
        LPPartition part2(g2);
        SpectralField gfield = make_single_mode(g2, 1, 0);
        InequalitySample s = main_inequality_ratio(gfield, one, 1.0, CzOperator::Identity, part2);
        CHECK(s.q == 1.0);
        CHECK(s.q_clamped);
    }

    SUBCASE("sweep reports max, median, argmax") {
        FieldCorpus corpus(g, 20, 23);
        RatioReport rep = main_inequality_sweep(corpus, one, 0.5, CzOperator::Riesz12);
        CHECK(rep.samples.size() == 20);
        CHECK(rep.max_ratio > 0.0);
        CHECK(rep.median_ratio > 0.0);
        CHECK(rep.median_ratio <= rep.max_ratio);
        CHECK(rep.argmax_index >= 0);
        CHECK(rep.seed == 23);
    }
}

TEST_CASE("commutator ratio") {
    Grid g(64, 2.0 * M_PI);
    LPPartition part(g);
    FieldCorpus f_corpus(g, 3, 29, -2.0, 0.375);  // below N/8
    FieldCorpus g_corpus(g, 3, 31, -1.0, 0.75);   // below N/4

    SUBCASE("constant multipliers commute with products") {
        for (int i = 0; i < 3; ++i) {
            double r = commutator_ratio(f_corpus.field(i), g_corpus.field(i),
                                        Multiplier::constant(2.5), 0.5, part);
            CHECK(r <= 1e-12);
        }
    }

    SUBCASE("constant f makes the denominator vanish") {
        SpectralField konst(g, 1.0);
        CHECK_THROWS_AS(
            commutator_ratio(konst, g_corpus.field(0), Multiplier::iterated_log({1.0}), 0.5, part),
            std::invalid_argument);
    }

    SUBCASE("iterated-log ratios are positive and bounded") {
        CommutatorSweepResult res =
            commutator_sweep(f_corpus, g_corpus, Multiplier::iterated_log({1.0}), 0.5);
        CHECK(res.max_ratio > 0.0);
        CHECK(res.max_ratio < 100.0);
    }
}

TEST_CASE("tangential holder ratio") {
    Grid g(128, 2.0 * M_PI);

    SUBCASE("circular patch gives a finite small ratio") {
        PatchState s = make_circle_patch(g, 1.0, 0.8);
        TangentialHolderReport rep =
            tangential_holder_ratio(s, Multiplier::iterated_log({1.0}), 0.5, 7);
        CHECK(std::isfinite(rep.ratio));
        CHECK(rep.ratio > 0.0);
        CHECK(rep.w_holder > 0.0);
    }

    SUBCASE("zero amplitude gives ratio zero") {
        PatchState s = make_circle_patch(g, 0.0, 0.8);
        TangentialHolderReport rep =
            tangential_holder_ratio(s, Multiplier::iterated_log({1.0}), 0.5, 7);
        CHECK(rep.numerator_sup == 0.0);
        CHECK(rep.ratio == 0.0);
    }

    SUBCASE("aspect sweep stays within one constant") {
        Multiplier m = Multiplier::iterated_log({1.0});
        double rmin = 1e300, rmax = 0.0;
        for (double aspect : {1.5, 2.0, 3.0, 4.0}) {
            double a = 0.55 * std::sqrt(aspect), b = 0.55 / std::sqrt(aspect);
            PatchState s = make_ellipse_patch(g, 1.0, a, b);
            TangentialHolderReport rep = tangential_holder_ratio(s, m, 0.5, 7);
            CHECK(std::isfinite(rep.ratio));
            rmin = std::min(rmin, rep.ratio);
            rmax = std::max(rmax, rep.ratio);
        }
        CHECK(rmax / rmin <= 10.0);
    }
}

TEST_CASE("field corpus determinism and contracts") {
    Grid g(64, 2.0 * M_PI);
    FieldCorpus corpus(g, 5, 101, -1.0, 0.8);
    SpectralField a = corpus.field(3);
    SpectralField b = corpus.field(3);
    const double* pa = a.phys();
    const double* pb = b.phys();
    for (std::size_t i = 0; i < std::size_t(64) * 64; ++i) CHECK(pa[i] == pb[i]);

    for (int i = 0; i < 5; ++i) {
        SpectralField f = corpus.field(i);
        CHECK(std::abs(f.mean()) <= 1e-13);
        CHECK(f.max_abs() == doctest::Approx(1.0).epsilon(1e-12));
        // radially band-limited under the dealias cut
        SpectralField cut = dealias(f);
        cut -= f;
        CHECK(cut.max_abs() <= 1e-13);
    }
    CHECK_THROWS_AS(corpus.field(5), std::out_of_range);
}
