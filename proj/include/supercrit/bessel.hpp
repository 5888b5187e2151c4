#pragma once

#include "supercrit/multiplier.hpp"

#include <vector>

namespace supercrit {

/// J0 and J1: power series below x = 12, Hankel asymptotic expansion
/// beyond. Absolute accuracy ~1e-9 over the quadrature range, which is far
/// inside the tolerances of the kernel tables built on top.
double bessel_j0(double x);
double bessel_j1(double x);
/// k-th positive zero of J0 (k >= 1): McMahon expansion + Newton.
double bessel_j0_zero(int k);

struct KernelRow {
    double rho = 0.0;
    double f_hat = 0.0;
    double f_hat_d1 = 0.0;
    double f_hat_d2 = 0.0;
    double majorant_ratio = 0.0;  // rho^2 |f''| / (1 + m(1/rho))
};

struct KernelTable {
    std::vector<KernelRow> rows;
    int zero_intervals = 0;   // oscillation intervals actually summed
    int nodes_per_interval = 0;
    double majorant_sup = 0.0;
    double log_slope = 0.0;   // fitted d f_hat / d Log rho over the table
};

/// Radial physical-space kernel of the symbol m(|xi|)/|xi|^2:
///   f_hat(rho)  = (1/2pi) [ int_0^1 (J0(2 pi rho r)-1) m(r)/r dr
///                          + int_1^inf J0(2 pi rho r) m(r)/r dr ]
///   f_hat'(rho) = int_0^inf J0'(2 pi rho r) m(r) dr
///   f_hat''(rho)= 2 pi int_0^inf J0''(2 pi rho r) r m(r) dr
/// The oscillatory tails are summed interval-by-interval between
/// consecutive zeros of J0 with Euler averaging of the partial sums (the
/// f'' integrand grows like r^{1/2} m(r), so plain summation diverges).
/// Throws if the acceleration has not stabilized after max_intervals.
KernelTable compute_radial_kernel(const Multiplier& m, std::span<const double> rho_grid,
                                  int nodes_per_interval = 16, int max_intervals = 200);

}  // namespace supercrit
