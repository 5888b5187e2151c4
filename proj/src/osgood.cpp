#include "supercrit/osgood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace supercrit {

namespace {

// Fixed 4-panel Simpson per table interval; intervals are 1/64 decade so
// this is far below the 1e-6 accuracy the closed-form checks need.
double simpson4(const std::function<double(double)>& f, double a, double b) {
    const int panels = 4;
    double h = (b - a) / (2 * panels);
    double acc = f(a) + f(b);
    for (int i = 1; i < 2 * panels; ++i) acc += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace

OsgoodEnvelope::OsgoodEnvelope(std::function<double(double)> gamma, double lower_limit,
                               double table_top, int points_per_decade)
    : gamma_(std::move(gamma)), lower_limit_(lower_limit), table_top_(table_top) {
    if (!(lower_limit > 0.0) || !(table_top > lower_limit))
        throw std::invalid_argument("OsgoodEnvelope: need 0 < lower_limit < table_top");
    if (points_per_decade < 8)
        throw std::invalid_argument("OsgoodEnvelope: points_per_decade too coarse");

    // H(r) = int_a^r dr'/gamma(r') = int_{Log a}^{Log r} e^x / gamma(e^x) dx.
    auto integrand = [this](double x) {
        double r = std::exp(x);
        double gv = gamma_(r);
        if (!(gv > 0.0)) throw std::domain_error("OsgoodEnvelope: gamma must be positive");
        return r / gv;
    };

    const double x_lo = std::log(lower_limit), x_hi = std::log(table_top);
    const int n = std::max(16, int(std::ceil((x_hi - x_lo) / std::log(10.0) * points_per_decade)));
    log_r_.resize(std::size_t(n) + 1);
    h_.resize(std::size_t(n) + 1);
    log_r_[0] = x_lo;
    h_[0] = 0.0;
    for (int i = 1; i <= n; ++i) {
        log_r_[std::size_t(i)] = x_lo + (x_hi - x_lo) * double(i) / n;
        h_[std::size_t(i)] =
            h_[std::size_t(i) - 1] + simpson4(integrand, log_r_[std::size_t(i) - 1], log_r_[std::size_t(i)]);
        if (!(h_[std::size_t(i)] > h_[std::size_t(i) - 1]))
            throw std::runtime_error("OsgoodEnvelope: H failed to increase (gamma not positive?)");
    }

    // Slopes of Log r as a function of H are known in closed form,
    // d(Log r)/dH = gamma(r)/r, so the cubic Hermite inverse is O(h^4)
    // accurate instead of the O(h^3) a secant-slope fit would give.
    const std::size_t m = h_.size();
    slope_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        double r = std::exp(log_r_[i]);
        slope_[i] = gamma_(r) / r;
    }
}

OsgoodEnvelope OsgoodEnvelope::for_gamma_symbol(const GammaSymbol& gamma, double lower_limit,
                                                double table_top, int points_per_decade) {
    return OsgoodEnvelope([gamma](double r) { return r * gamma(r); }, lower_limit, table_top,
                          points_per_decade);
}

double OsgoodEnvelope::H(double r) const {
    if (!(r >= lower_limit_) || !(r <= table_top_))
        throw std::out_of_range("OsgoodEnvelope::H: argument outside table");
    double x = std::log(r);
    auto it = std::upper_bound(log_r_.begin(), log_r_.end(), x);
    std::size_t hi = std::clamp<std::size_t>(std::size_t(it - log_r_.begin()), 1, log_r_.size() - 1);
    std::size_t lo = hi - 1;
    // Quadrature from the nearest node below keeps the forward direction at
    // full accuracy; it is called once per curve, not per point.
    auto integrand = [this](double xx) {
        double rr = std::exp(xx);
        return rr / gamma_(rr);
    };
    return h_[lo] + simpson4(integrand, log_r_[lo], x);
}

double OsgoodEnvelope::value_or_inf(double y) const {
    if (y <= 0.0) return std::exp(log_r_.front());
    if (y > h_.back()) return std::numeric_limits<double>::infinity();
    auto it = std::upper_bound(h_.begin(), h_.end(), y);
    std::size_t hi = std::clamp<std::size_t>(std::size_t(it - h_.begin()), 1, h_.size() - 1);
    std::size_t lo = hi - 1;
    double dh = h_[hi] - h_[lo];
    double t = (y - h_[lo]) / dh;
    double a = log_r_[lo], b = log_r_[hi];
    double sa = slope_[lo] * dh, sb = slope_[hi] * dh;
    double t2 = t * t, t3 = t2 * t;
    double x = (2 * t3 - 3 * t2 + 1) * a + (t3 - 2 * t2 + t) * sa + (-2 * t3 + 3 * t2) * b +
               (t3 - t2) * sb;
    return std::exp(x);
}

double OsgoodEnvelope::H_inverse(double y) const {
    double v = value_or_inf(y);
    if (std::isinf(v))
        throw std::out_of_range("envelope blow-up beyond tabulated range (extend table_top)");
    return v;
}

double OsgoodEnvelope::H_inverse_or_inf(double y) const { return value_or_inf(y); }

std::vector<double> OsgoodEnvelope::envelope(double f0, double C, std::span<const double> t_grid) const {
    if (!(f0 > lower_limit_))
        throw std::invalid_argument("envelope: f0 must exceed the table lower limit");
    double h0 = H(f0);
    std::vector<double> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) out.push_back(H_inverse(h0 + C * t * f0));
    return out;
}

std::vector<double> OsgoodEnvelope::two_term_envelope(double f0, double C,
                                                      std::span<const double> t_grid) const {
    if (!(f0 > lower_limit_))
        throw std::invalid_argument("two_term_envelope: f0 must exceed the table lower limit");
    double k = subadditivity_constant(gamma_, lower_limit_, std::min(table_top_, 1e6));
    if (!(k < 1e3))
        throw std::invalid_argument("two_term_envelope: gamma is not numerically subadditive");
    double h0 = H(f0);
    std::vector<double> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) out.push_back(H_inverse(h0 + C * (t * t + t)));
    return out;
}

namespace {

double bisect_fit(std::span<const double> t, std::span<const double> measured,
                  const std::function<double(double, double)>& arg_shift,  // (C, t) -> H offset
                  const OsgoodEnvelope& env, double f0) {
    if (t.size() != measured.size() || t.empty())
        throw std::invalid_argument("fit_constant: series shape mismatch");
    if (!(measured[0] <= f0 * (1.0 + 1e-6)))
        throw std::invalid_argument("fit_constant: measured(0) exceeds f0");

    double h0 = env.H(f0);
    auto dominated = [&](double C) {
        for (std::size_t i = 0; i < t.size(); ++i) {
            // relative slack absorbs the inverse-table interpolation wiggle
            // right at t = 0 where envelope == f0 == measured (the table
            // round trip is good to ~1e-8)
            if (env.H_inverse_or_inf(h0 + arg_shift(C, t[i])) < measured[i] * (1.0 - 1e-7))
                return false;
        }
        return true;
    };

    double lo = 1e-6, hi = 1e6;
    if (dominated(lo)) return lo;  // data flat: bracket bottom
    if (!dominated(hi)) throw std::runtime_error("envelope family cannot dominate data");
    while (hi / lo > 1.0 + 1e-3) {
        double mid = std::sqrt(lo * hi);
        (dominated(mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace

double fit_constant(std::span<const double> t, std::span<const double> measured,
                    const OsgoodEnvelope& env, double f0) {
    return bisect_fit(t, measured, [f0](double C, double tt) { return C * tt * f0; }, env, f0);
}

double fit_constant_two_term(std::span<const double> t, std::span<const double> measured,
                             const OsgoodEnvelope& env, double f0) {
    return bisect_fit(t, measured, [](double C, double tt) { return C * (tt * tt + tt); }, env, f0);
}

double subadditivity_constant(const std::function<double(double)>& gamma, double lo, double hi) {
    double worst = 0.0;
    for (double x = lo; x <= hi; x *= 2.0) {
        for (double y = x; y <= hi; y *= 2.0) {
            if (x + y > hi) continue;
            worst = std::max(worst, gamma(x + y) / (gamma(x) + gamma(y)));
        }
    }
    return worst;
}

}  // namespace supercrit
