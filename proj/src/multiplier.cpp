#include "supercrit/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace supercrit {

Multiplier Multiplier::constant(double c, double clamp_floor) {
    if (!(c > 0.0)) throw std::invalid_argument("Multiplier::constant: c must be positive");
    Multiplier m;
    m.kind_ = Kind::Constant;
    m.constant_ = c;
    m.clamp_floor_ = clamp_floor;
    return m;
}

Multiplier Multiplier::iterated_log(std::vector<double> exponents, double clamp_floor) {
    if (exponents.empty())
        throw std::invalid_argument("Multiplier::iterated_log: need at least one exponent");
    for (double g : exponents)
        if (!(g >= 0.0) || !(g <= 1.0))
            throw std::invalid_argument("Multiplier::iterated_log: exponents must lie in [0,1]");
    if (!(clamp_floor > 0.0))
        throw std::invalid_argument("Multiplier::iterated_log: clamp floor must be positive");
    Multiplier m;
    m.kind_ = Kind::IteratedLog;
    m.exponents_ = std::move(exponents);
    m.clamp_floor_ = clamp_floor;
    return m;
}

Multiplier Multiplier::user_table(std::vector<double> r, std::vector<double> mv,
                                  double clamp_floor) {
    if (r.size() != mv.size() || r.size() < 2)
        throw std::invalid_argument("Multiplier::user_table: need >= 2 matching samples");
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!(r[i] > 0.0) || !(mv[i] > 0.0))
            throw std::invalid_argument("Multiplier::user_table: samples must be positive");
        if (i > 0 && !(r[i] > r[i - 1]))
            throw std::invalid_argument("Multiplier::user_table: abscissae must increase");
    }
    if (!(r.front() <= clamp_floor))
        throw std::invalid_argument("Multiplier::user_table: table must cover the clamp floor");
    Multiplier m;
    m.kind_ = Kind::UserTable;
    m.clamp_floor_ = clamp_floor;
    m.table_log_r_.reserve(r.size());
    m.table_log_m_.reserve(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        m.table_log_r_.push_back(std::log(r[i]));
        m.table_log_m_.push_back(std::log(mv[i]));
    }
    return m;
}

double Multiplier::max_argument() const {
    if (kind_ == Kind::UserTable) return std::exp(table_log_r_.back());
    return std::numeric_limits<double>::infinity();
}

double Multiplier::operator()(double r) const {
    if (!std::isfinite(r) || r < 0.0)
        throw std::invalid_argument("Multiplier: argument must be finite and non-negative");
    return eval_log(std::log(std::max(r, clamp_floor_)));
}

double Multiplier::eval_log(double log_r) const {
    log_r = std::max(log_r, std::log(clamp_floor_));
    switch (kind_) {
        case Kind::Constant:
            return constant_;
        case Kind::IteratedLog: {
            // a_1 = Log(r^2+1); beyond r ~ 1e8 the +1 is below double
            // resolution, so switch to 2 Log r to avoid overflowing r^2.
            double a = (log_r > 18.0) ? 2.0 * log_r
                                      : std::log(std::exp(2.0 * log_r) + 1.0);
            double v = 1.0;
            for (double g : exponents_) {
                a = std::log1p(a);
                v *= std::pow(a, g);
            }
            return v;
        }
        case Kind::UserTable: {
            const auto& xs = table_log_r_;
            if (log_r > xs.back() + 1e-12) {
                std::ostringstream os;
                os << "UserTable multiplier queried at r=" << std::exp(log_r)
                   << " outside its range [" << std::exp(xs.front()) << ", "
                   << std::exp(xs.back()) << "]";
                throw std::out_of_range(os.str());
            }
            log_r = std::min(log_r, xs.back());
            auto it = std::upper_bound(xs.begin(), xs.end(), log_r);
            std::size_t hi = std::clamp<std::size_t>(std::size_t(it - xs.begin()), 1, xs.size() - 1);
            std::size_t lo = hi - 1;
            double t = (log_r - xs[lo]) / (xs[hi] - xs[lo]);
            return std::exp((1.0 - t) * table_log_m_[lo] + t * table_log_m_[hi]);
        }
    }
    return constant_;
}

std::string Multiplier::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Constant:
            os << "constant(" << constant_ << ")";
            break;
        case Kind::IteratedLog:
            os << "iterated-log(";
            for (std::size_t i = 0; i < exponents_.size(); ++i)
                os << (i ? "," : "") << exponents_[i];
            os << ")";
            break;
        case Kind::UserTable:
            os << "table[" << table_log_r_.size() << " pts, r in "
               << std::exp(table_log_r_.front()) << ".." << std::exp(table_log_r_.back()) << "]";
            break;
    }
    os << " clamp=" << clamp_floor_;
    return os.str();
}

double GammaSymbol::operator()(double s) const {
    s = std::max(s, m_.clamp_floor());
    return m_(s) * (1.0 + std::log(s));
}

std::string to_string(OsgoodVerdict v) {
    switch (v) {
        case OsgoodVerdict::Diverges: return "Diverges";
        case OsgoodVerdict::Converges: return "Converges";
        case OsgoodVerdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

std::vector<double> log_grid(double lo, double hi, int points_per_decade) {
    if (!(lo > 0.0) || !(hi > lo) || points_per_decade < 1)
        throw std::invalid_argument("log_grid: need 0 < lo < hi and points_per_decade >= 1");
    double decades = std::log10(hi / lo);
    int n = std::max(2, int(std::ceil(decades * points_per_decade)) + 1);
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = lo * std::pow(hi / lo, double(i) / double(n - 1));
    g.back() = hi;
    return g;
}

namespace {

// Adaptive Simpson on [a,b]; f must be smooth.
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0) return left + right;
    if (std::abs(left + right - whole) <= 15.0 * tol) return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
    double mx = 0, my = 0;
    std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= double(n); my /= double(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxx > 0 ? sxy / sxx : 0.0;
}

}  // namespace

OsgoodResult check_osgood_condition(const Multiplier& m, std::span<const double> upper_limits) {
    if (upper_limits.empty() || upper_limits.front() < 10.0)
        throw std::invalid_argument("check_osgood_condition: first upper limit must be >= 10");
    for (std::size_t i = 1; i < upper_limits.size(); ++i)
        if (!(upper_limits[i] > upper_limits[i - 1]))
            throw std::invalid_argument("check_osgood_condition: upper limits must increase");

    OsgoodResult res;
    auto& ev = res.evidence;
    ev.upper_limits.assign(upper_limits.begin(), upper_limits.end());

    // Substitute s = Log t: I(T) = int_{Log 2}^{Log T} ds / (s m(e^s)).
    auto integrand = [&m](double s) { return 1.0 / (s * m.eval_log(s)); };

    double s_prev = std::log(2.0);
    double acc = 0.0;
    try {
        for (double T : upper_limits) {
            double s_hi = std::log(T);
            acc += integrate(integrand, s_prev, s_hi, 1e-10);
            ev.tail_integrals.push_back(acc);
            s_prev = s_hi;
        }
    } catch (const std::exception& e) {
        ev.quadrature_ok = false;
        ev.note = std::string("quadrature aborted: ") + e.what();
        res.verdict = OsgoodVerdict::Inconclusive;
        return res;
    }
    for (double v : ev.tail_integrals) {
        if (!std::isfinite(v)) {
            ev.quadrature_ok = false;
            ev.note = "non-finite tail integral";
            res.verdict = OsgoodVerdict::Inconclusive;
            return res;
        }
    }

    const double T_end = upper_limits.back();
    const double T_cut = T_end / 100.0;  // last two decades

    std::vector<double> xs, ys;  // LogLog T vs I(T) on the tail window
    double I_at_cut = ev.tail_integrals.front();
    for (std::size_t i = 0; i < upper_limits.size(); ++i) {
        if (upper_limits[i] >= T_cut * (1.0 - 1e-9)) {
            xs.push_back(std::log(std::log(upper_limits[i])));
            ys.push_back(ev.tail_integrals[i]);
        }
        if (upper_limits[i] <= T_cut * (1.0 + 1e-9)) I_at_cut = ev.tail_integrals[i];
    }
    ev.last_increment = ev.tail_integrals.back() - I_at_cut;
    ev.loglog_slope = xs.size() >= 2 ? least_squares_slope(xs, ys)
                                     : std::numeric_limits<double>::quiet_NaN();

    // Integrand decay exponent in s over the same window.
    double s_end = std::log(T_end), s_cut = std::log(std::max(T_cut, 10.0));
    double g_end = integrand(s_end), g_cut = integrand(s_cut);
    ev.decay_exponent = -(std::log(g_end) - std::log(g_cut)) / (std::log(s_end) - std::log(s_cut));

    if (ev.last_increment <= 1e-6) {
        res.verdict = OsgoodVerdict::Converges;
        ev.note = "increments Cauchy over the last two decades";
    } else if (std::isfinite(ev.loglog_slope) && ev.loglog_slope >= 0.05) {
        res.verdict = OsgoodVerdict::Diverges;
        ev.note = "I(T) grows ~ LogLog T without saturation";
    } else if (ev.decay_exponent >= 1.5) {
        res.verdict = OsgoodVerdict::Converges;
        ev.note = "integrand decays super-harmonically in Log t; extrapolated tail finite";
    } else {
        res.verdict = OsgoodVerdict::Inconclusive;
        ev.note = "neither sustained growth nor saturation detected at these limits";
    }
    return res;
}

HypothesisReport check_hypotheses(const Multiplier& m, std::span<const double> grid) {
    if (grid.size() < 100)
        throw std::invalid_argument("check_hypotheses: grid must have >= 100 points");
    if (!(grid.back() / grid.front() >= 1e8))
        throw std::invalid_argument("check_hypotheses: grid must span >= 8 decades");

    HypothesisReport rep;
    rep.grid.assign(grid.begin(), grid.end());

    double top = m.max_argument();
    auto in_range = [&](double r) { return r <= top; };

    rep.nondecreasing = true;
    rep.doubling_constant = 0.0;
    rep.log_growth_constant = 0.0;
    rep.min_value = std::numeric_limits<double>::infinity();
    double prev = -std::numeric_limits<double>::infinity();
    double prev_r = 0.0;
    for (double r : grid) {
        if (!in_range(r)) break;
        double v = m(r);
        rep.min_value = std::min(rep.min_value, v);
        if (r >= m.clamp_floor() && prev_r >= m.clamp_floor() && v < prev - 1e-12)
            rep.nondecreasing = false;
        prev = v;
        prev_r = r;
        if (in_range(2.0 * r)) rep.doubling_constant = std::max(rep.doubling_constant, m(2.0 * r) / v);
        rep.log_growth_constant = std::max(rep.log_growth_constant, v / std::log(r + 2.0));
    }
    if (m.kind() == Multiplier::Kind::UserTable && !rep.nondecreasing)
        throw std::runtime_error("check_hypotheses: UserTable multiplier is not non-decreasing");

    // Sub-multiplicativity m(t1 t2) <= C (m(t1) + m(t2)) over a coarsened pair grid.
    rep.submult_constant = 0.0;
    std::size_t stride = std::max<std::size_t>(1, grid.size() / 48);
    for (std::size_t i = 0; i < grid.size(); i += stride) {
        for (std::size_t j = i; j < grid.size(); j += stride) {
            double a = grid[i], b = grid[j];
            if (!in_range(a * b)) continue;
            rep.submult_constant = std::max(rep.submult_constant, m(a * b) / (m(a) + m(b)));
        }
    }

    std::vector<double> limits;
    for (double T = 100.0; T <= std::min(1e30, top) * (1 + 1e-9); T *= 10.0) limits.push_back(T);
    if (limits.size() < 3) limits = {10.0, 30.0, 100.0};
    rep.osgood = check_osgood_condition(m, limits);
    return rep;
}

HypothesisReport check_hypotheses(const Multiplier& m) {
    double hi = std::min(1e12, m.max_argument());
    return check_hypotheses(m, log_grid(1.0, hi, 128));
}

}  // namespace supercrit
