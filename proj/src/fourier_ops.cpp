#include "supercrit/fourier_ops.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <vector>

namespace supercrit {

namespace {

// Iterate r2c slots; fn(slot index, signed nx, signed ny). The r2c layout
// stores nx in [0, n/2]; nx = n/2 and ny = -n/2 are Nyquist.
template <class F>
void for_each_slot(const Grid& g, F&& fn) {
    const int n = g.n, cols = n / 2 + 1;
    for (int iy = 0; iy < n; ++iy) {
        int ny = (iy <= n / 2 - 1) ? iy : iy - n;
        for (int ix = 0; ix < cols; ++ix) {
            fn(std::size_t(iy) * cols + ix, ix, ny);
        }
    }
}

bool is_nyquist(const Grid& g, int nx, int ny) {
    return nx == g.n / 2 || ny == -g.n / 2;
}

// m(|k|) per slot. Cached for the closed-form kinds: the solver applies the
// same symbol thousands of times and a per-slot log/pow chain would rival
// the FFT cost. UserTable symbols are evaluated directly (cheap, and their
// contents make a poor cache key).
std::vector<double> build_symbol_table(const Grid& g, const Multiplier& m) {
    std::vector<double> tab(std::size_t(g.n) * (g.n / 2 + 1), 0.0);
    const double ks = g.k_scale();
    for_each_slot(g, [&](std::size_t s, int nx, int ny) {
        tab[s] = m(ks * std::hypot(double(nx), double(ny)));
    });
    return tab;
}

const std::vector<double>& multiplier_table(const Grid& g, const Multiplier& m) {
    static std::mutex mutex;
    static std::map<std::string, std::vector<double>> cache;
    static thread_local std::vector<double> uncached;

    if (m.kind() == Multiplier::Kind::UserTable) {
        uncached = build_symbol_table(g, m);
        return uncached;
    }

    std::ostringstream key;
    key.precision(17);
    key << g.n << '/' << g.length << '/' << int(m.kind()) << '/' << m.clamp_floor() << '/'
        << m.constant_value();
    for (double e : m.exponents()) key << ',' << e;

    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key.str());
    if (it != cache.end()) return it->second;
    return cache.emplace(key.str(), build_symbol_table(g, m)).first->second;
}

}  // namespace

SpectralField apply_symbol(const SpectralField& f,
                           const std::function<std::complex<double>(double, double)>& symbol) {
    const Grid& g = f.grid();
    SpectralField out(g);
    const std::complex<double>* in = f.spec();
    std::complex<double>* oc = out.spec();
    const double ks = g.k_scale();
    for_each_slot(g, [&](std::size_t s, int nx, int ny) {
        if (is_nyquist(g, nx, ny)) {
            oc[s] = 0.0;
            return;
        }
        oc[s] = symbol(ks * nx, ks * ny) * in[s];
    });
    out.mark_phys_dirty();
    return out;
}

VectorField biot_savart(const SpectralField& omega, const Multiplier& m) {
    const Grid& g = omega.grid();
    VectorField u(g);
    const std::complex<double>* in = omega.spec();
    const std::vector<double>& mtab = multiplier_table(g, m);
    std::complex<double>* ux = u.x.spec();
    std::complex<double>* uy = u.y.spec();
    const double ks = g.k_scale();
    const std::complex<double> I(0.0, 1.0);
    for_each_slot(g, [&](std::size_t s, int nx, int ny) {
        if ((nx == 0 && ny == 0) || is_nyquist(g, nx, ny)) {
            ux[s] = uy[s] = 0.0;
            return;
        }
        double kx = ks * nx, ky = ks * ny;
        double k2 = kx * kx + ky * ky;
        std::complex<double> psi_hat = mtab[s] / k2 * in[s];
        // u = grad^perp Laplacian^{-1} omega = (i ky, -i kx)/|k|^2 * omega_hat
        ux[s] = I * ky * psi_hat;
        uy[s] = -I * kx * psi_hat;
    });
    u.x.mark_phys_dirty();
    u.y.mark_phys_dirty();
    return u;
}

SpectralField apply_multiplier(const SpectralField& f, const Multiplier& m) {
    const Grid& g = f.grid();
    SpectralField out(g);
    const std::complex<double>* in = f.spec();
    const std::vector<double>& mtab = multiplier_table(g, m);
    std::complex<double>* oc = out.spec();
    for_each_slot(g, [&](std::size_t s, int, int) { oc[s] = mtab[s] * in[s]; });
    out.mark_phys_dirty();
    return out;
}

SpectralField derivative(const SpectralField& f, int dim) {
    const std::complex<double> I(0.0, 1.0);
    if (dim == 0) return apply_symbol(f, [&](double kx, double) { return I * kx; });
    return apply_symbol(f, [&](double, double ky) { return I * ky; });
}

VectorField gradient(const SpectralField& f) {
    VectorField g;
    g.x = derivative(f, 0);
    g.y = derivative(f, 1);
    return g;
}

VectorField perp_gradient(const SpectralField& f) {
    VectorField g;
    SpectralField dx = derivative(f, 0);
    SpectralField dy = derivative(f, 1);
    dy *= -1.0;
    g.x = std::move(dy);
    g.y = std::move(dx);
    return g;
}

SpectralField divergence(const VectorField& u) {
    SpectralField d = derivative(u.x, 0);
    d += derivative(u.y, 1);
    return d;
}

void dealias_in_place(SpectralField& f) {
    const Grid& g = f.grid();
    const int cut = g.dealias_max_freq();
    std::complex<double>* c = f.spec();
    for_each_slot(g, [&](std::size_t s, int nx, int ny) {
        if (std::abs(nx) > cut || std::abs(ny) > cut) c[s] = 0.0;
    });
    f.mark_phys_dirty();
}

SpectralField dealias(const SpectralField& f) {
    SpectralField out = f;
    dealias_in_place(out);
    return out;
}

void band_limit_in_place(SpectralField& f, double k_max) {
    const Grid& g = f.grid();
    std::complex<double>* c = f.spec();
    const double ks = g.k_scale();
    for_each_slot(g, [&](std::size_t s, int nx, int ny) {
        if (ks * std::hypot(double(nx), double(ny)) > k_max) c[s] = 0.0;
    });
    f.mark_phys_dirty();
}

SpectralField refine_to(const SpectralField& f, const Grid& fine) {
    const Grid& g = f.grid();
    if (fine.n < g.n || fine.length != g.length)
        throw std::invalid_argument("refine_to: fine grid must refine the source grid");
    SpectralField out(fine);
    const std::complex<double>* in = f.spec();
    std::complex<double>* oc = out.spec();
    const int cols_f = fine.n / 2 + 1;
    for (std::size_t i = 0; i < std::size_t(fine.n) * cols_f; ++i) oc[i] = 0.0;
    const double scale = (double(fine.n) * fine.n) / (double(g.n) * g.n);
    const int cols_c = g.n / 2 + 1;
    for (int iy = 0; iy < g.n; ++iy) {
        int ny = (iy <= g.n / 2 - 1) ? iy : iy - g.n;
        if (ny == -g.n / 2) continue;
        int iy_f = ny >= 0 ? ny : ny + fine.n;
        for (int ix = 0; ix < cols_c; ++ix) {
            if (ix == g.n / 2) continue;
            oc[std::size_t(iy_f) * cols_f + ix] = scale * in[std::size_t(iy) * cols_c + ix];
        }
    }
    out.mark_phys_dirty();
    return out;
}

VelocityGradient velocity_gradient(const SpectralField& omega, const Multiplier& m) {
    const Grid& g = omega.grid();
    const std::vector<double>& mtab = multiplier_table(g, m);
    const std::complex<double>* in = omega.spec();
    VelocityGradient t{SpectralField(g), SpectralField(g), SpectralField(g), SpectralField(g)};
    std::complex<double>* xx = t.dux_dx.spec();
    std::complex<double>* xy = t.dux_dy.spec();
    std::complex<double>* yx = t.duy_dx.spec();
    std::complex<double>* yy = t.duy_dy.spec();
    const double ks = g.k_scale();
    for_each_slot(g, [&](std::size_t s, int nx, int ny) {
        if ((nx == 0 && ny == 0) || is_nyquist(g, nx, ny)) {
            xx[s] = xy[s] = yx[s] = yy[s] = 0.0;
            return;
        }
        double kx = ks * nx, ky = ks * ny;
        double k2 = kx * kx + ky * ky;
        std::complex<double> w = mtab[s] / k2 * in[s];
        // d_j u_i symbols from u_hat = (i ky, -i kx)/|k|^2 m omega_hat
        xx[s] = -kx * ky * w;
        xy[s] = -ky * ky * w;
        yx[s] = kx * kx * w;
        yy[s] = kx * ky * w;
    });
    t.dux_dx.mark_phys_dirty();
    t.dux_dy.mark_phys_dirty();
    t.duy_dx.mark_phys_dirty();
    t.duy_dy.mark_phys_dirty();
    return t;
}

VelocityGradient gradient_tensor(const VectorField& u) {
    VelocityGradient t;
    t.dux_dx = derivative(u.x, 0);
    t.dux_dy = derivative(u.x, 1);
    t.duy_dx = derivative(u.y, 0);
    t.duy_dy = derivative(u.y, 1);
    return t;
}

double operator_norm_2x2(double a, double b, double c, double d) {
    // Largest singular value of [[a,b],[c,d]].
    double f2 = a * a + b * b + c * c + d * d;
    double det = a * d - b * c;
    double disc = f2 * f2 - 4.0 * det * det;
    disc = disc > 0.0 ? std::sqrt(disc) : 0.0;
    return std::sqrt(0.5 * (f2 + disc));
}

double max_operator_norm(const VelocityGradient& t) {
    const double* a = t.dux_dx.phys();
    const double* b = t.dux_dy.phys();
    const double* c = t.duy_dx.phys();
    const double* d = t.duy_dy.phys();
    std::size_t total = std::size_t(t.grid().n) * t.grid().n;
    double s = 0.0;
    for (std::size_t i = 0; i < total; ++i)
        s = std::max(s, operator_norm_2x2(a[i], b[i], c[i], d[i]));
    return s;
}

}  // namespace supercrit
