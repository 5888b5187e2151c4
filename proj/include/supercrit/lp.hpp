#pragma once

#include "supercrit/fourier_ops.hpp"
#include "supercrit/multiplier.hpp"
#include "supercrit/spectral_field.hpp"

#include <cstdint>
#include <vector>

namespace supercrit {

/// Dyadic partition of unity on frequency space:
///   chi(k) + sum_{j=0}^{j_max} phi(2^{-j} k) = 1   for |k| <= 1.5 * 2^{j_max},
/// with chi a smoothstep in Log2|k| dropping from 1 at 3/4 to 0 at 1, and
/// phi(k) = chi(k/2) - chi(k) supported in the annulus 3/4 <= |k| <= 2.
/// j_max is the largest block index under the dealias cut:
/// 2^{j_max+1} <= k_scale * floor(N/3).
class LPPartition {
public:
    /// transition_order picks the smoothstep: 1 = cubic (C^1),
    /// 2 = quintic (C^2, default), 3 = septic (C^3).
    explicit LPPartition(const Grid& grid, int transition_order = 2);

    const Grid& grid() const { return grid_; }
    int j_max() const { return j_max_; }

    double chi(double k_abs) const;
    double phi(double k_abs) const { return chi(0.5 * k_abs) - chi(k_abs); }
    /// Block weight: j = -1 gives chi(|k|), j >= 0 gives phi(2^{-j}|k|).
    double block_weight(int j, double k_abs) const;
    /// Partial-sum weight of S_j = sum_{k=-1}^{j} Delta_k = chi(2^{-j-1}|k|).
    double partial_weight(int j, double k_abs) const { return chi(std::ldexp(k_abs, -j - 1)); }

    /// Largest |k| for which the partition sums to 1 (coverage radius).
    double coverage() const { return 1.5 * std::ldexp(1.0, j_max_); }

private:
    Grid grid_;
    int j_max_ = 0;
    int order_ = 2;
};

LPPartition build_partition(const Grid& grid, int transition_order = 2);

/// Blocks Delta_{-1} f .. Delta_{j_max} f.
struct LPDecomposition {
    std::vector<SpectralField> blocks;  // blocks[j + 1] = Delta_j f
    int j_max = 0;

    const SpectralField& block(int j) const { return blocks[std::size_t(j + 1)]; }
    SpectralField reconstruct() const;
};

LPDecomposition decompose(const SpectralField& f, const LPPartition& p);
/// Single block Delta_j f.
SpectralField lp_block(const SpectralField& f, const LPPartition& p, int j);
/// Partial sum S_j f.
SpectralField lp_partial_sum(const SpectralField& f, const LPPartition& p, int j);

struct BlockNormRow {
    int j;
    double l2;
    double linf;
    double weighted_l2;    // 2^{js} ||Delta_j f||_2
    double weighted_linf;  // 2^{js} ||Delta_j f||_inf
};

/// X = (sum 2^{2js} ||Delta_j f||_2^2)^{1/2}  (Besov B^s_{2,2} ~ H^s)
/// Y = sup_j 2^{js} ||Delta_j f||_inf         (Besov B^s_{inf,inf} ~ C^s)
/// combined = Y + ||f||_2, the computable stand-in for the C^s cap L^2 norm.
struct BesovNorms {
    double s = 0.0;
    double x_norm = 0.0;
    double y_norm = 0.0;
    double l2 = 0.0;
    double combined = 0.0;
    int j_max = 0;  // truncation is visible to consumers
    std::vector<BlockNormRow> per_block;
};

BesovNorms besov_norms(const LPDecomposition& d, double s);
/// Convenience: decompose + norms.
BesovNorms besov_norms(const SpectralField& f, const LPPartition& p, double s);

/// Direct Sobolev sum (sum (1+|k|^2)^s |f_k|^2)^{1/2}, the oracle partner of
/// the X norm.
double sobolev_norm_direct(const SpectralField& f, double s);

/// Pair-sampled Holder quotient sup |f(x+h)-f(x)|/|h|^s over dyadic |h|,
/// the oracle partner of the Y norm. Deterministic given the seed.
double holder_quotient_sampled(const SpectralField& f, double s, std::uint64_t seed,
                               int pairs_per_scale = 512);

/// Per-j table of ||S_j grad(u)||_inf / m(2^j) for j = -1 .. j_max; entry
/// .second is the normalized sup, .first is j. The operator norm of the
/// 2x2 gradient is used pointwise.
std::vector<std::pair<int, double>> sup_block_gradient(const VectorField& u, const LPPartition& p,
                                                       const Multiplier& m);

/// Physical-side quasi-Lipschitz modulus
///   sup_{x != y} |u(x)-u(y)| / (|x-y| (1 + m(1/|x-y|)))
/// estimated over seeded random grid pairs at dyadic separations.
double quasi_lipschitz_modulus(const VectorField& u, const Multiplier& m, std::uint64_t seed,
                               int pairs_per_scale = 512);

}  // namespace supercrit
