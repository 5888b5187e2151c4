#pragma once

#include "supercrit/corpus.hpp"
#include "supercrit/lp.hpp"
#include "supercrit/multiplier.hpp"
#include "supercrit/patch.hpp"

#include <string>
#include <vector>

namespace supercrit {

enum class CzOperator { Identity, Riesz11, Riesz12, Riesz22 };

CzOperator cz_operator_from_string(const std::string& name);
std::string to_string(CzOperator op);

struct InequalitySample {
    int index = -1;
    double ratio = 0.0;
    double lhs = 0.0;          // ||f||_inf
    double rhs = 0.0;          // ||g||_2 + ||g||_inf (1 + Log(Q) m(Q))
    double q = 0.0;            // max(1, |g|_{C^s proxy} / |g|_inf)
    bool q_clamped = false;
    double cutoff_n = 0.0;     // the proof-side frequency cutoff ~ Log2 Q
};

struct RatioReport {
    std::vector<InequalitySample> samples;
    double max_ratio = 0.0;
    double median_ratio = 0.0;
    int argmax_index = -1;
    std::uint64_t seed = 0;  // generator seed of the sweep, for reproducibility
};

/// LHS/RHS of the log-Sobolev-type bound for f with
/// f_hat = m(|k|) R(k) g_hat:
///   ||f||_inf <= C ( ||g||_2 + ||g||_inf (1 + Log(Q) m(Q)) ),
/// Q = |g|_{C^s}/|g|_inf clamped below at 1 (reported).
InequalitySample main_inequality_ratio(const SpectralField& g, const Multiplier& m, double s,
                                       CzOperator op, const LPPartition& part);

RatioReport main_inequality_sweep(const FieldCorpus& corpus, const Multiplier& m, double s,
                                  CzOperator op);

/// sup_j 2^{j mu} m(2^j)^{-1} ||Delta_j((m(|D|)f) g - m(|D|)(f g))||_inf
/// over (sup_j 2^{j mu} ||Delta_j g||_inf * ||grad f||_inf).
/// f must be band-limited below N/8 so the products are alias-free.
double commutator_ratio(const SpectralField& f, const SpectralField& g, const Multiplier& m,
                        double mu, const LPPartition& part);

struct CommutatorSweepResult {
    std::vector<double> ratios;
    double max_ratio = 0.0;
};

CommutatorSweepResult commutator_sweep(const FieldCorpus& f_corpus, const FieldCorpus& g_corpus,
                                       const Multiplier& m, double mu);

struct TangentialHolderReport {
    double ratio = 0.0;
    double numerator_sup = 0.0;   // sup_j 2^{j s} m(2^j)^{-1} ||Delta_j(grad u W)||_inf
    double w_holder = 0.0;        // |W|_sigma (band pair-sampled)
    double delta_sigma = 0.0;
};

/// W = grad^perp phi. Ratio of the weighted block sups of grad(u) W against
/// (1 + Log Delta_sigma) |W|_sigma.
TangentialHolderReport tangential_holder_ratio(const PatchState& state, const Multiplier& m,
                                               double sigma, std::uint64_t seed);

}  // namespace supercrit
