#include "supercrit/lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace supercrit {

CzOperator cz_operator_from_string(const std::string& name) {
    if (name == "identity") return CzOperator::Identity;
    if (name == "riesz11") return CzOperator::Riesz11;
    if (name == "riesz12") return CzOperator::Riesz12;
    if (name == "riesz22") return CzOperator::Riesz22;
    throw std::invalid_argument("unknown Calderon-Zygmund operator: " + name);
}

std::string to_string(CzOperator op) {
    switch (op) {
        case CzOperator::Identity: return "identity";
        case CzOperator::Riesz11: return "riesz11";
        case CzOperator::Riesz12: return "riesz12";
        case CzOperator::Riesz22: return "riesz22";
    }
    return "identity";
}

namespace {

// Symbol of d_i d_j Laplacian^{-1} (compositions of Riesz transforms).
double cz_symbol(CzOperator op, double kx, double ky) {
    double k2 = kx * kx + ky * ky;
    if (k2 == 0.0) return op == CzOperator::Identity ? 1.0 : 0.0;
    switch (op) {
        case CzOperator::Identity: return 1.0;
        case CzOperator::Riesz11: return kx * kx / k2;
        case CzOperator::Riesz12: return kx * ky / k2;
        case CzOperator::Riesz22: return ky * ky / k2;
    }
    return 1.0;
}

}  // namespace

InequalitySample main_inequality_ratio(const SpectralField& g, const Multiplier& m, double s,
                                       CzOperator op, const LPPartition& part) {
    if (!(s > 0.0) || !(s <= 1.0))
        throw std::invalid_argument("main_inequality_ratio: s must lie in (0, 1]");
    double g_inf = g.max_abs();
    if (!(g_inf > 0.0)) throw std::invalid_argument("main_inequality_ratio: g must be nonzero");

    SpectralField f = apply_symbol(g, [&](double kx, double ky) {
        double k = std::hypot(kx, ky);
        return std::complex<double>(m(k) * cz_symbol(op, kx, ky), 0.0);
    });

    InequalitySample sample;
    sample.lhs = f.max_abs();
    double y = besov_norms(g, part, s).y_norm;
    double q = y / g_inf;
    if (q < 1.0) {
        q = 1.0;
        sample.q_clamped = true;
    }
    sample.q = q;
    sample.cutoff_n = std::log2(std::max(q, 1.0));
    sample.rhs = g.l2_norm() + g_inf * (1.0 + std::log(q) * m(q));
    sample.ratio = sample.lhs / sample.rhs;
    return sample;
}

RatioReport main_inequality_sweep(const FieldCorpus& corpus, const Multiplier& m, double s,
                                  CzOperator op) {
    LPPartition part(corpus.grid());
    RatioReport report;
    report.seed = corpus.seed();
    std::vector<double> ratios;
    for (int i = 0; i < corpus.count(); ++i) {
        InequalitySample sample = main_inequality_ratio(corpus.field(i), m, s, op, part);
        sample.index = i;
        if (sample.ratio > report.max_ratio) {
            report.max_ratio = sample.ratio;
            report.argmax_index = i;
        }
        ratios.push_back(sample.ratio);
        report.samples.push_back(sample);
    }
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    report.median_ratio = sorted[sorted.size() / 2];
    return report;
}

double commutator_ratio(const SpectralField& f, const SpectralField& g, const Multiplier& m,
                        double mu, const LPPartition& part) {
    if (!(mu > 0.0) || !(mu <= 1.0))
        throw std::invalid_argument("commutator_ratio: mu must lie in (0, 1]");
    const Grid& grid = f.grid();
    const std::size_t total = std::size_t(grid.n) * grid.n;

    SpectralField mf = apply_multiplier(f, m);
    SpectralField prod_mf_g(grid);
    SpectralField prod_fg(grid);
    {
        const double* a = mf.phys();
        const double* b = g.phys();
        const double* fp = f.phys();
        double* p1 = prod_mf_g.phys();
        double* p2 = prod_fg.phys();
        for (std::size_t i = 0; i < total; ++i) {
            p1[i] = a[i] * b[i];
            p2[i] = fp[i] * b[i];
        }
    }
    SpectralField commutator = prod_mf_g;
    commutator -= apply_multiplier(prod_fg, m);

    double num = 0.0;
    LPDecomposition dec = decompose(commutator, part);
    for (int j = -1; j <= part.j_max(); ++j) {
        double w = std::pow(2.0, j * mu) / m(std::ldexp(1.0, j));
        num = std::max(num, w * dec.block(j).max_abs());
    }

    double gy = besov_norms(g, part, mu).y_norm;
    VectorField gf = gradient(f);
    double grad_f_inf = 0.0;
    {
        const double* gx = gf.x.phys();
        const double* gyp = gf.y.phys();
        for (std::size_t i = 0; i < total; ++i)
            grad_f_inf = std::max(grad_f_inf, std::hypot(gx[i], gyp[i]));
    }
    double denom = gy * grad_f_inf;
    if (!(denom > 0.0))
        throw std::invalid_argument("commutator_ratio: denominator vanishes (constant input)");
    return num / denom;
}

CommutatorSweepResult commutator_sweep(const FieldCorpus& f_corpus, const FieldCorpus& g_corpus,
                                       const Multiplier& m, double mu) {
    if (f_corpus.count() != g_corpus.count())
        throw std::invalid_argument("commutator_sweep: corpora must have equal counts");
    LPPartition part(f_corpus.grid());
    CommutatorSweepResult res;
    for (int i = 0; i < f_corpus.count(); ++i) {
        double r = commutator_ratio(f_corpus.field(i), g_corpus.field(i), m, mu, part);
        res.ratios.push_back(r);
        res.max_ratio = std::max(res.max_ratio, r);
    }
    return res;
}

TangentialHolderReport tangential_holder_ratio(const PatchState& state, const Multiplier& m,
                                               double sigma, std::uint64_t seed) {
    const Grid& grid = state.phi.grid();
    LPPartition part(grid);
    const std::size_t total = std::size_t(grid.n) * grid.n;

    SpectralField omega = patch_indicator(state);
    omega.subtract_mean();
    VelocityGradient vg = velocity_gradient(omega, m);
    VectorField w = perp_gradient(state.phi);

    SpectralField px(grid), py(grid);
    {
        const double* axx = vg.dux_dx.phys();
        const double* axy = vg.dux_dy.phys();
        const double* ayx = vg.duy_dx.phys();
        const double* ayy = vg.duy_dy.phys();
        const double* wx = w.x.phys();
        const double* wy = w.y.phys();
        double* ox = px.phys();
        double* oy = py.phys();
        for (std::size_t i = 0; i < total; ++i) {
            ox[i] = axx[i] * wx[i] + axy[i] * wy[i];
            oy[i] = ayx[i] * wx[i] + ayy[i] * wy[i];
        }
    }

    TangentialHolderReport rep;
    LPDecomposition dx = decompose(px, part);
    LPDecomposition dy = decompose(py, part);
    for (int j = -1; j <= part.j_max(); ++j) {
        const double* bx = dx.block(j).phys();
        const double* by = dy.block(j).phys();
        double sup = 0.0;
        for (std::size_t i = 0; i < total; ++i) sup = std::max(sup, std::hypot(bx[i], by[i]));
        double wgt = std::pow(2.0, j * sigma) / m(std::ldexp(1.0, j));
        rep.numerator_sup = std::max(rep.numerator_sup, wgt * sup);
    }

    // |W|_sigma = |grad phi|_sigma: rotating a 2-vector leaves difference
    // norms unchanged, so the band machinery applies as-is.
    HolderEstimate he = grad_holder_seminorm(state, sigma, seed);
    rep.w_holder = he.seminorm;
    rep.delta_sigma = he.seminorm / grad_inf_band(state);
    double d = std::max(rep.delta_sigma, 1.0 + 1e-12);
    rep.ratio = rep.numerator_sup / ((1.0 + std::log(d)) * rep.w_holder);
    return rep;
}

}  // namespace supercrit
