#include "supercrit/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace supercrit {

namespace {

constexpr double kPi = 3.14159265358979323846;

double j0_series(double x) {
    double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int m = 1; m <= 40; ++m) {
        term *= -q / (double(m) * m);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
    }
    return sum;
}

double j1_series(double x) {
    double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int m = 1; m <= 40; ++m) {
        term *= -q / (double(m) * (m + 1.0));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
    }
    return 0.5 * x * sum;
}

// Hankel asymptotic moduli for large x.
void hankel_pq(double x, double mu, double& p, double& q) {
    // mu = 4 nu^2; terms through (8x)^{-6}.
    double ix = 1.0 / (8.0 * x);
    double m = mu;
    double t1 = (m - 1.0) * (m - 9.0) / 2.0;
    double t2 = (m - 1.0) * (m - 9.0) * (m - 25.0) * (m - 49.0) / 24.0;
    double t3 = (m - 1.0) * (m - 9.0) * (m - 25.0) * (m - 49.0) * (m - 81.0) * (m - 121.0) / 720.0;
    p = 1.0 - t1 * ix * ix + t2 * std::pow(ix, 4) - t3 * std::pow(ix, 6);
    double s0 = (m - 1.0);
    double s1 = (m - 1.0) * (m - 9.0) * (m - 25.0) / 6.0;
    double s2 = (m - 1.0) * (m - 9.0) * (m - 25.0) * (m - 49.0) * (m - 81.0) / 120.0;
    q = s0 * ix - s1 * std::pow(ix, 3) + s2 * std::pow(ix, 5);
}

double j_asymptotic(double x, int nu) {
    double p, q;
    hankel_pq(x, 4.0 * nu * nu, p, q);
    double chi = x - (0.5 * nu + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x) {
    x = std::abs(x);
    return x < 12.0 ? j0_series(x) : j_asymptotic(x, 0);
}

double bessel_j1(double x) {
    double s = x < 0.0 ? -1.0 : 1.0;
    x = std::abs(x);
    return s * (x < 12.0 ? j1_series(x) : j_asymptotic(x, 1));
}

double bessel_j0_zero(int k) {
    if (k < 1) throw std::invalid_argument("bessel_j0_zero: k >= 1");
    static std::mutex mutex;
    static std::vector<double> memo;
    std::lock_guard<std::mutex> lock(mutex);
    if (int(memo.size()) >= k) return memo[std::size_t(k) - 1];
    for (int kk = int(memo.size()) + 1; kk <= k; ++kk) {
        // McMahon expansion, then Newton with J0' = -J1.
        double b = (kk - 0.25) * kPi;
        double b2 = b * b;
        double x = b + 1.0 / (8.0 * b) - 31.0 / (384.0 * b * b2) + 3779.0 / (15360.0 * b2 * b2 * b);
        for (int it = 0; it < 3; ++it) {
            double f = bessel_j0(x);
            double fp = -bessel_j1(x);
            if (std::abs(fp) < 1e-30) break;
            x -= f / fp;
        }
        memo.push_back(x);
    }
    return memo[std::size_t(k) - 1];
}

namespace {

// 16-point Gauss-Legendre on [-1, 1].
constexpr double kGlx[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                            0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                            0.9445750230732326, 0.9894009349916499};
constexpr double kGlw[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                            0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                            0.0622535239386479, 0.0271524594117541};

double gauss(const std::function<double(double)>& f, double a, double b, int nodes_per_interval) {
    // nodes_per_interval = 16 uses one panel; larger values split evenly.
    int panels = std::max(1, nodes_per_interval / 16);
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        double pa = a + (b - a) * p / panels;
        double pb = a + (b - a) * (p + 1) / panels;
        double mid = 0.5 * (pa + pb), half = 0.5 * (pb - pa);
        for (int i = 0; i < 8; ++i) {
            acc += half * kGlw[i] * (f(mid + half * kGlx[i]) + f(mid - half * kGlx[i]));
        }
    }
    return acc;
}

// Euler transform of the tail of a (possibly amplitude-growing) alternating
// sequence of partial sums: full binomial averaging of the last window.
double euler_average(const std::vector<double>& partial, int window) {
    int w = std::min<int>(window, int(partial.size()));
    std::vector<double> v(partial.end() - w, partial.end());
    while (v.size() > 1) {
        for (std::size_t i = 0; i + 1 < v.size(); ++i) v[i] = 0.5 * (v[i] + v[i + 1]);
        v.pop_back();
    }
    return v.front();
}

struct OscillatorySum {
    double value = 0.0;
    int intervals = 0;
};

// sum over zero-intervals of J0(2 pi rho r) of integrand(r) dr, accelerated.
OscillatorySum sum_oscillatory(const std::function<double(double)>& integrand, double rho,
                               double r_start, int nodes_per_interval, int max_intervals,
                               double scale_hint) {
    std::vector<double> partial;
    double acc = 0.0;
    double prev_break = r_start;
    int k = 1;
    // Skip zeros below the start.
    while (bessel_j0_zero(k) / (2.0 * kPi * rho) <= r_start) ++k;

    // The stretch up to the first zero can span decades when rho is small
    // (the oscillation has not started there); integrate it on log-spaced
    // panels so 1/r-type weights are resolved.
    {
        double first_zero = bessel_j0_zero(k) / (2.0 * kPi * rho);
        double lo = std::max(r_start, 1e-12);
        if (r_start == 0.0)
            acc += gauss(integrand, 0.0, std::min(lo, first_zero), nodes_per_interval);
        int panels = std::max(4, int(std::ceil(4.0 * std::log10(first_zero / lo))));
        for (int p = 0; p < panels; ++p) {
            double a = lo * std::pow(first_zero / lo, double(p) / panels);
            double b = lo * std::pow(first_zero / lo, double(p + 1) / panels);
            acc += gauss(integrand, a, b, nodes_per_interval);
        }
        prev_break = first_zero;
        ++k;
    }

    double estimate = 0.0, prev_estimate = 0.0;
    const int window = 24;
    for (int n = 0; n < max_intervals; ++n, ++k) {
        double r_next = bessel_j0_zero(k) / (2.0 * kPi * rho);
        acc += gauss(integrand, prev_break, r_next, nodes_per_interval);
        prev_break = r_next;
        partial.push_back(acc);
        if (int(partial.size()) >= window && n % 4 == 0) {
            prev_estimate = estimate;
            estimate = euler_average(partial, window);
            if (n > window && std::abs(estimate - prev_estimate) <
                                  1e-9 * std::max(std::abs(estimate), scale_hint))
                return {estimate, n + 1};
        }
    }
    if (int(partial.size()) >= window) {
        estimate = euler_average(partial, window);
        double check = euler_average(std::vector<double>(partial.begin(), partial.end() - 4), window);
        if (std::abs(estimate - check) < 1e-6 * std::max(std::abs(estimate), scale_hint))
            return {estimate, max_intervals};
    }
    throw std::runtime_error(
        "compute_radial_kernel: oscillatory sum not converged after max zero-intervals");
}

}  // namespace

KernelTable compute_radial_kernel(const Multiplier& m, std::span<const double> rho_grid,
                                  int nodes_per_interval, int max_intervals) {
    KernelTable table;
    table.nodes_per_interval = nodes_per_interval;

    for (double rho : rho_grid) {
        if (!(rho >= 1e-3) || !(rho <= 1.0))
            throw std::invalid_argument("compute_radial_kernel: rho must lie in [1e-3, 1]");
        KernelRow row;
        row.rho = rho;

        auto j0_arg = [rho](double r) { return 2.0 * kPi * rho * r; };

        // f_hat: renormalized near r = 0 by the (J0 - 1) subtraction.
        auto f0_low = [&](double r) {
            return r == 0.0 ? 0.0 : (bessel_j0(j0_arg(r)) - 1.0) * m(r) / r;
        };
        auto f0_tail = [&](double r) { return bessel_j0(j0_arg(r)) * m(r) / r; };
        double low = gauss(f0_low, 0.0, 1.0, std::max(nodes_per_interval, 32));
        OscillatorySum tail0 =
            sum_oscillatory(f0_tail, rho, 1.0, nodes_per_interval, max_intervals, std::abs(low) + 1.0);
        row.f_hat = (low + tail0.value) / (2.0 * kPi);
        table.zero_intervals = std::max(table.zero_intervals, tail0.intervals);

        // f_hat' with J0' = -J1.
        auto f1 = [&](double r) { return -bessel_j1(j0_arg(r)) * m(r); };
        OscillatorySum d1 = sum_oscillatory(f1, rho, 0.0, nodes_per_interval, max_intervals,
                                            m(1.0) / rho);
        row.f_hat_d1 = d1.value;

        // f_hat'' with J0''(x) = -J0(x) + J1(x)/x.
        auto f2 = [&](double r) {
            double x = j0_arg(r);
            double j0pp = x == 0.0 ? -0.5 : (-bessel_j0(x) + bessel_j1(x) / x);
            return 2.0 * kPi * j0pp * r * m(r);
        };
        OscillatorySum d2 = sum_oscillatory(f2, rho, 0.0, nodes_per_interval, max_intervals,
                                            m(1.0) / (rho * rho));
        row.f_hat_d2 = d2.value;

        row.majorant_ratio = rho * rho * std::abs(row.f_hat_d2) / (1.0 + m(1.0 / rho));
        table.majorant_sup = std::max(table.majorant_sup, row.majorant_ratio);
        table.rows.push_back(row);
    }

    // Fitted Log-slope of f_hat over the grid.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : table.rows) {
        double x = std::log(r.rho);
        sx += x;
        sy += r.f_hat;
        sxx += x * x;
        sxy += x * r.f_hat;
    }
    double n = double(table.rows.size());
    table.log_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return table;
}

}  // namespace supercrit
