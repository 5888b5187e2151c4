#pragma once

#include <span>
#include <string>
#include <vector>

namespace supercrit {

/// Radial Fourier symbol m(|xi|). Built-in families:
///   Constant(c)            m(r) = c
///   IteratedLog(g1..gn)    m(r) = prod_i Log(1 + a_i)^{g_i},
///                          a_1 = Log(r^2+1), a_{i+1} = Log(1 + a_i)
///   UserTable(r_i, m_i)    log-log linear interpolation between samples
///
/// Evaluation clamps the argument below clamp_floor (default 2) so the
/// symbol stays positive on the low-frequency blocks; the clamp only
/// touches the Delta_{-1}/Delta_0 range and is reported in output
/// metadata wherever a multiplier is serialized.
class Multiplier {
public:
    enum class Kind { Constant, IteratedLog, UserTable };

    static Multiplier constant(double c, double clamp_floor = 2.0);
    static Multiplier iterated_log(std::vector<double> exponents, double clamp_floor = 2.0);
    static Multiplier user_table(std::vector<double> r, std::vector<double> m,
                                 double clamp_floor = 2.0);

    /// m(max(r, clamp_floor)). Exact for Constant; UserTable queried above
    /// its top sample throws with the valid range in the message.
    double operator()(double r) const;

    /// m(e^s) without forming e^s; safe for s up to ~1e7 (arguments far
    /// beyond double range). Used by the Osgood tail integrals.
    double eval_log(double log_r) const;

    Kind kind() const { return kind_; }
    double clamp_floor() const { return clamp_floor_; }
    const std::vector<double>& exponents() const { return exponents_; }
    double constant_value() const { return constant_; }
    /// Top of the queryable range: +inf except for UserTable.
    double max_argument() const;

    /// One-line description for output headers, e.g. "iterated-log(1)".
    std::string describe() const;

private:
    Multiplier() = default;

    Kind kind_ = Kind::Constant;
    double constant_ = 1.0;
    double clamp_floor_ = 2.0;
    std::vector<double> exponents_;
    std::vector<double> table_log_r_;
    std::vector<double> table_log_m_;
};

/// Gamma(s) = m(s) * (1 + Log(s)) for s >= clamp floor.
class GammaSymbol {
public:
    explicit GammaSymbol(Multiplier m) : m_(std::move(m)) {}
    double operator()(double s) const;
    const Multiplier& base() const { return m_; }

private:
    Multiplier m_;
};

enum class OsgoodVerdict { Diverges, Converges, Inconclusive };

std::string to_string(OsgoodVerdict v);

/// Tail integrals I(T) = int_2^T dt / (t Log(t) m(t)) at a ladder of upper
/// limits, plus the numbers the verdict was derived from.
struct OsgoodEvidence {
    std::vector<double> upper_limits;
    std::vector<double> tail_integrals;
    double last_increment = 0.0;   // I(T_end) - I(T_end/100)
    double loglog_slope = 0.0;     // dI / d LogLog T over the last two decades
    double decay_exponent = 0.0;   // -dLog g/dLog s of the integrand, last two decades
    bool quadrature_ok = true;
    std::string note;
};

struct OsgoodResult {
    OsgoodVerdict verdict = OsgoodVerdict::Inconclusive;
    OsgoodEvidence evidence;
};

/// Log-spaced sample grid; points_per_decade defaults to 128 because the
/// symbols vary on log scale.
std::vector<double> log_grid(double lo, double hi, int points_per_decade = 128);

struct HypothesisReport {
    double doubling_constant = 0.0;    // least C with m(2t) <= C m(t)
    double submult_constant = 0.0;     // least C with m(t1 t2) <= C (m(t1)+m(t2))
    double log_growth_constant = 0.0;  // least C with m(r) <= C Log(r+2)
    bool nondecreasing = false;
    double min_value = 0.0;            // min of m over the grid (positivity evidence)
    OsgoodResult osgood;
    std::vector<double> grid;          // the sample grid used
};

/// Empirical least constants over a log-spaced grid (>= 100 points spanning
/// >= 8 decades) plus the Osgood verdict. Throws on a non-monotone
/// UserTable, which violates the standing hypothesis on m.
HypothesisReport check_hypotheses(const Multiplier& m, std::span<const double> grid);
HypothesisReport check_hypotheses(const Multiplier& m);

/// Quadrature of I(T) = int_2^T dt/(t Log t m(t)) for each upper limit
/// (increasing, first >= 10). Verdict rules, in order:
///   Converges  if the I(T) increments are Cauchy (<= 1e-6 over the last
///              two decades), or the integrand decays with fitted exponent
///              >= 1.5 in s = Log t (extrapolated tail finite);
///   Diverges   if the slope of I against LogLog T stays >= 0.05;
///   Inconclusive otherwise, and always on quadrature failure.
OsgoodResult check_osgood_condition(const Multiplier& m, std::span<const double> upper_limits);

}  // namespace supercrit
