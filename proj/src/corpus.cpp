#include "supercrit/corpus.hpp"

#include "supercrit/fourier_ops.hpp"
#include "supercrit/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace supercrit {

FieldCorpus::FieldCorpus(const Grid& grid, int count, std::uint64_t seed, double spectral_slope,
                         double cutoff_fraction)
    : grid_(grid), count_(count), seed_(seed), slope_(spectral_slope),
      cutoff_fraction_(cutoff_fraction) {
    if (count < 1) throw std::invalid_argument("FieldCorpus: count must be positive");
    if (!(cutoff_fraction > 0.0) || !(cutoff_fraction <= 1.0))
        throw std::invalid_argument("FieldCorpus: cutoff fraction must lie in (0, 1]");
}

SpectralField FieldCorpus::field(int index) const {
    if (index < 0 || index >= count_) throw std::out_of_range("FieldCorpus: index out of range");
    Rng rng(seed_ ^ (0x9e3779b97f4a7c15ull * std::uint64_t(index + 1)));

    const int n = grid_.n, cols = n / 2 + 1;
    const double ks = grid_.k_scale();
    const double k_cut = cutoff_fraction_ * ks * grid_.dealias_max_freq();

    SpectralField f(grid_);
    std::complex<double>* c = f.spec();
    for (std::size_t i = 0; i < std::size_t(n) * cols; ++i) c[i] = 0.0;

    // Fill positive-kx slots freely; the kx = 0 column needs explicit
    // Hermitian symmetry (c2r input). Draw order is fixed for determinism.
    for (int iy = 0; iy < n; ++iy) {
        int ny = (iy <= n / 2 - 1) ? iy : iy - n;
        for (int ix = 0; ix < cols; ++ix) {
            if (ix == 0) continue;
            double k = ks * std::hypot(double(ix), double(ny));
            if (k > k_cut || k == 0.0) continue;
            double amp = std::pow(k, slope_);
            c[std::size_t(iy) * cols + ix] = amp * std::complex<double>(rng.normal(), rng.normal());
        }
    }
    for (int iy = 1; iy <= n / 2 - 1; ++iy) {
        double k = ks * iy;
        if (k > k_cut) continue;
        double amp = std::pow(k, slope_);
        std::complex<double> v = amp * std::complex<double>(rng.normal(), rng.normal());
        c[std::size_t(iy) * cols] = v;
        c[std::size_t(n - iy) * cols] = std::conj(v);
    }
    f.mark_phys_dirty();

    double sup = f.max_abs();
    if (sup > 0.0) f *= 1.0 / sup;
    return f;
}

SpectralField make_single_mode(const Grid& g, int n1, int n2, double amplitude) {
    SpectralField f(g);
    f.fill([&](double x, double y) {
        return amplitude * std::cos(g.k_scale() * (n1 * x + n2 * y));
    });
    return f;
}

namespace {

double wrapped_delta(double a, double l) {
    a = std::fmod(a, l);
    if (a < -0.5 * l) a += l;
    if (a > 0.5 * l) a -= l;
    return a;
}

}  // namespace

SpectralField make_radial_bump(const Grid& g, double sigma, double amplitude) {
    // Mean-free radial profile (zero total integral). With zero circulation
    // every far-field multipole vanishes, so the periodic images induce no
    // flow at all and the torus velocity is azimuthal to machine precision;
    // a plain Gaussian would pick up an r^3 sin(4 theta) image strain.
    const double cx = 0.5 * g.length, cy = 0.5 * g.length;
    SpectralField f(g);
    f.fill([&](double x, double y) {
        double dx = wrapped_delta(x - cx, g.length), dy = wrapped_delta(y - cy, g.length);
        double s = (dx * dx + dy * dy) / (2.0 * sigma * sigma);
        return amplitude * (1.0 - s) * std::exp(-s);
    });
    band_limit_in_place(f, g.k_scale() * g.n / 4.0);
    return f;
}

SpectralField make_two_vortex(const Grid& g, double amplitude, double sigma, double separation) {
    const double cx = 0.5 * g.length, cy = 0.5 * g.length;
    const double off = 0.5 * separation;
    SpectralField f(g);
    f.fill([&](double x, double y) {
        double d1x = wrapped_delta(x - (cx - off), g.length), d1y = wrapped_delta(y - cy, g.length);
        double d2x = wrapped_delta(x - (cx + off), g.length), d2y = wrapped_delta(y - cy, g.length);
        double s2 = 2.0 * sigma * sigma;
        return amplitude * (std::exp(-(d1x * d1x + d1y * d1y) / s2) +
                            std::exp(-(d2x * d2x + d2y * d2y) / s2));
    });
    band_limit_in_place(f, g.k_scale() * g.n / 4.0);
    return f;
}

}  // namespace supercrit
