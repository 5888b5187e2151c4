#pragma once

#include "supercrit/multiplier.hpp"

#include <functional>
#include <span>
#include <vector>

namespace supercrit {

/// Tabulated H(r) = int_a^r dr'/gamma(r') on a log grid with its monotone
/// inverse. gamma must be positive on [a, table_top]; H is then strictly
/// increasing and the inverse is interpolated with a monotone cubic in
/// (H, Log r).
class OsgoodEnvelope {
public:
    OsgoodEnvelope(std::function<double(double)> gamma, double lower_limit = 1.0,
                   double table_top = 1e300, int points_per_decade = 64);

    /// Growth-bound flavor used by the transport estimates: the effective
    /// gamma is r -> r * Gamma(r) with Gamma(r) = m(r)(1 + Log r), so that
    /// H(r) = int dr' / (r' Gamma(r')).
    static OsgoodEnvelope for_gamma_symbol(const GammaSymbol& gamma, double lower_limit = 1.0,
                                           double table_top = 1e300, int points_per_decade = 64);

    double lower_limit() const { return lower_limit_; }
    double table_top() const { return table_top_; }
    double h_max() const { return h_.back(); }

    double H(double r) const;
    /// Throws "envelope blow-up beyond tabulated range" past the table,
    /// distinguishing table exhaustion from a genuine divergence.
    double H_inverse(double y) const;
    /// Like H_inverse but returns +inf past the table (for domination tests).
    double H_inverse_or_inf(double y) const;

    double gamma(double r) const { return gamma_(r); }

    /// Bound curve f(t) <= H^{-1}(H(f0) + C t f0) on t_grid; equals f0 at
    /// t = 0 and is non-decreasing.
    std::vector<double> envelope(double f0, double C, std::span<const double> t_grid) const;

    /// Two-term bound H^{-1}(H(f0) + C (t^2 + t)); requires gamma to be
    /// numerically subadditive (gamma(x+y) <= K (gamma(x)+gamma(y)) with a
    /// moderate K over sampled pairs).
    std::vector<double> two_term_envelope(double f0, double C, std::span<const double> t_grid) const;

private:
    double value_or_inf(double y) const;

    std::function<double(double)> gamma_;
    double lower_limit_;
    double table_top_;
    std::vector<double> log_r_;  // nodes, increasing
    std::vector<double> h_;      // H at nodes, increasing
    std::vector<double> slope_;  // monotone-cubic slopes of Log r as a function of H
};

/// Least C such that envelope(gamma, f0, C, t) dominates the measured
/// series pointwise, by bisection on Log C within [1e-6, 1e6]:
/// the result dominates and C*(1-1e-3) does not. Bracket ends are returned
/// as-is when the data sits below (resp. above) the whole family.
/// Throws if no C in range dominates.
double fit_constant(std::span<const double> t, std::span<const double> measured,
                    const OsgoodEnvelope& env, double f0);

/// Same bisection against the two-term envelope family.
double fit_constant_two_term(std::span<const double> t, std::span<const double> measured,
                             const OsgoodEnvelope& env, double f0);

/// Least K with gamma(x+y) <= K (gamma(x) + gamma(y)) over a sampled pair
/// grid in [lo, hi]^2.
double subadditivity_constant(const std::function<double(double)>& gamma, double lo, double hi);

}  // namespace supercrit
