#include "supercrit/lp.hpp"

#include "supercrit/interp.hpp"
#include "supercrit/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace supercrit {

namespace {

double smoothstep(double z, int order) {
    if (z <= 0.0) return 0.0;
    if (z >= 1.0) return 1.0;
    switch (order) {
        case 1: return z * z * (3.0 - 2.0 * z);
        case 3: return z * z * z * z * (35.0 + z * (-84.0 + z * (70.0 - 20.0 * z)));
        default: return z * z * z * (10.0 + z * (-15.0 + 6.0 * z));
    }
}

}  // namespace

LPPartition::LPPartition(const Grid& grid, int transition_order)
    : grid_(grid), order_(transition_order) {
    if (transition_order < 1 || transition_order > 3)
        throw std::invalid_argument("LPPartition: transition order must be 1, 2 or 3");
    const double k_cut = grid.k_scale() * grid.dealias_max_freq();
    j_max_ = -1;
    while (std::ldexp(1.0, j_max_ + 2) <= k_cut) ++j_max_;
    if (j_max_ < 2) throw std::invalid_argument("LPPartition: grid too small (j_max < 2)");
}

LPPartition build_partition(const Grid& grid, int transition_order) {
    return LPPartition(grid, transition_order);
}

double LPPartition::chi(double k_abs) const {
    // 1 below 3/4, 0 above 1, smoothstep in Log2 between.
    constexpr double lo = 0.75;
    if (k_abs <= lo) return 1.0;
    if (k_abs >= 1.0) return 0.0;
    double z = std::log2(k_abs / lo) / std::log2(1.0 / lo);
    return 1.0 - smoothstep(z, order_);
}

double LPPartition::block_weight(int j, double k_abs) const {
    if (j < -1 || j > j_max_) throw std::out_of_range("LPPartition: block index out of range");
    if (j == -1) return chi(k_abs);
    return phi(std::ldexp(k_abs, -j));
}

namespace {

SpectralField apply_block_weight(const SpectralField& f, const LPPartition& p, int j,
                                 bool partial) {
    const Grid& g = f.grid();
    SpectralField out(g);
    const std::complex<double>* in = f.spec();
    std::complex<double>* oc = out.spec();
    const int n = g.n, cols = n / 2 + 1;
    const double ks = g.k_scale();
    for (int iy = 0; iy < n; ++iy) {
        int ny = (iy <= n / 2 - 1) ? iy : iy - n;
        for (int ix = 0; ix < cols; ++ix) {
            double k = ks * std::hypot(double(ix), double(ny));
            double w = partial ? p.partial_weight(j, k) : p.block_weight(j, k);
            oc[std::size_t(iy) * cols + ix] = w * in[std::size_t(iy) * cols + ix];
        }
    }
    out.mark_phys_dirty();
    return out;
}

}  // namespace

SpectralField lp_block(const SpectralField& f, const LPPartition& p, int j) {
    return apply_block_weight(f, p, j, false);
}

SpectralField lp_partial_sum(const SpectralField& f, const LPPartition& p, int j) {
    return apply_block_weight(f, p, j, true);
}

LPDecomposition decompose(const SpectralField& f, const LPPartition& p) {
    LPDecomposition d;
    d.j_max = p.j_max();
    d.blocks.reserve(std::size_t(d.j_max) + 2);
    for (int j = -1; j <= d.j_max; ++j) d.blocks.push_back(lp_block(f, p, j));
    return d;
}

SpectralField LPDecomposition::reconstruct() const {
    if (blocks.empty()) throw std::logic_error("LPDecomposition: empty");
    SpectralField sum = blocks.front();
    for (std::size_t i = 1; i < blocks.size(); ++i) sum += blocks[i];
    return sum;
}

BesovNorms besov_norms(const LPDecomposition& d, double s) {
    if (!(s > 0.0) || !(s <= 4.0))
        throw std::invalid_argument("besov_norms: s must lie in (0, 4]");
    BesovNorms out;
    out.s = s;
    out.j_max = d.j_max;
    double x2 = 0.0;
    for (int j = -1; j <= d.j_max; ++j) {
        const SpectralField& b = d.block(j);
        BlockNormRow row;
        row.j = j;
        row.l2 = b.l2_norm();
        row.linf = b.max_abs();
        double w = std::pow(2.0, j * s);
        row.weighted_l2 = w * row.l2;
        row.weighted_linf = w * row.linf;
        x2 += row.weighted_l2 * row.weighted_l2;
        out.y_norm = std::max(out.y_norm, row.weighted_linf);
        out.per_block.push_back(row);
    }
    out.x_norm = std::sqrt(x2);
    out.l2 = d.reconstruct().l2_norm();
    out.combined = out.y_norm + out.l2;
    return out;
}

BesovNorms besov_norms(const SpectralField& f, const LPPartition& p, double s) {
    BesovNorms out = besov_norms(decompose(f, p), s);
    out.l2 = f.l2_norm();
    out.combined = out.y_norm + out.l2;
    return out;
}

double sobolev_norm_direct(const SpectralField& f, double s) {
    const Grid& g = f.grid();
    const std::complex<double>* c = f.spec();
    const int n = g.n, cols = n / 2 + 1;
    const double ks = g.k_scale();
    double acc = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        int ny = (iy <= n / 2 - 1) ? iy : iy - n;
        for (int ix = 0; ix < cols; ++ix) {
            double k2 = ks * ks * (double(ix) * ix + double(ny) * ny);
            double w = (ix == 0 || ix == n / 2) ? 1.0 : 2.0;
            acc += w * std::pow(1.0 + k2, s) * std::norm(c[std::size_t(iy) * cols + ix]);
        }
    }
    // Same normalization as l2_norm: s = 0 reduces to it exactly.
    return std::sqrt(acc) * g.length / (double(n) * n);
}

double holder_quotient_sampled(const SpectralField& f, double s, std::uint64_t seed,
                               int pairs_per_scale) {
    const Grid& g = f.grid();
    Rng rng(seed);
    double sup = 0.0;
    const int scales = int(std::floor(std::log2(g.n / 2.0)));
    for (int p = 0; p < scales; ++p) {
        double h = g.spacing() * std::ldexp(1.0, p);
        for (int i = 0; i < pairs_per_scale; ++i) {
            double x = rng.uniform(0.0, g.length);
            double y = rng.uniform(0.0, g.length);
            double a = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
            double dx = h * std::cos(a), dy = h * std::sin(a);
            double q = std::abs(bicubic_sample(f, x + dx, y + dy) - bicubic_sample(f, x, y)) /
                       std::pow(h, s);
            sup = std::max(sup, q);
        }
    }
    return sup;
}

std::vector<std::pair<int, double>> sup_block_gradient(const VectorField& u, const LPPartition& p,
                                                       const Multiplier& m) {
    VelocityGradient t = gradient_tensor(u);
    const SpectralField* comps[4] = {&t.dux_dx, &t.dux_dy, &t.duy_dx, &t.duy_dy};
    const Grid& g = u.grid();
    const std::size_t total = std::size_t(g.n) * g.n;

    // Accumulate partial sums block by block; one pass per j over the
    // physical tensors.
    std::vector<std::vector<double>> acc(4, std::vector<double>(total, 0.0));
    std::vector<std::pair<int, double>> table;
    for (int j = -1; j <= p.j_max(); ++j) {
        for (int c = 0; c < 4; ++c) {
            SpectralField blk = lp_block(*comps[c], p, j);
            const double* bp = blk.phys();
            double* ap = acc[std::size_t(c)].data();
            for (std::size_t i = 0; i < total; ++i) ap[i] += bp[i];
        }
        double sup = 0.0;
        for (std::size_t i = 0; i < total; ++i)
            sup = std::max(sup, operator_norm_2x2(acc[0][i], acc[1][i], acc[2][i], acc[3][i]));
        table.emplace_back(j, sup / m(std::ldexp(1.0, j)));
    }
    return table;
}

double quasi_lipschitz_modulus(const VectorField& u, const Multiplier& m, std::uint64_t seed,
                               int pairs_per_scale) {
    const Grid& g = u.grid();
    Rng rng(seed);
    double sup = 0.0;
    const int scales = int(std::floor(std::log2(g.n / 2.0)));
    for (int p = 0; p < scales; ++p) {
        double h = g.spacing() * std::ldexp(1.0, p);
        for (int i = 0; i < pairs_per_scale; ++i) {
            double x = rng.uniform(0.0, g.length);
            double y = rng.uniform(0.0, g.length);
            double a = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
            double dx = h * std::cos(a), dy = h * std::sin(a);
            double du = std::hypot(bicubic_sample(u.x, x + dx, y + dy) - bicubic_sample(u.x, x, y),
                                   bicubic_sample(u.y, x + dx, y + dy) - bicubic_sample(u.y, x, y));
            sup = std::max(sup, du / (h * (1.0 + m(1.0 / h))));
        }
    }
    return sup;
}

}  // namespace supercrit
