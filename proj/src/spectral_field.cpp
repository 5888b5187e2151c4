#include "supercrit/spectral_field.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>

namespace supercrit {

namespace {

// FFTW plans are cached per grid size and executed through thread-local
// fftw_malloc scratch, so concurrent transforms of distinct fields need no
// lock. FFTW_ESTIMATE keeps planning deterministic, which the
// reproducibility contract needs (FFTW_MEASURE may pick a different
// algorithm run to run).
struct Plans {
    fftw_plan fwd = nullptr, bwd = nullptr;
};

Plans& plans_for(int n) {
    static std::mutex mutex;
    static std::map<int, Plans> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    double* re = fftw_alloc_real(std::size_t(n) * n);
    fftw_complex* cx = fftw_alloc_complex(std::size_t(n) * (n / 2 + 1));
    Plans p;
    p.fwd = fftw_plan_dft_r2c_2d(n, n, re, cx, FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_c2r_2d(n, n, cx, re, FFTW_ESTIMATE);
    fftw_free(re);
    fftw_free(cx);
    return cache.emplace(n, p).first->second;
}

struct Scratch {
    double* re = nullptr;
    fftw_complex* cx = nullptr;
    int n = 0;

    void ensure(int n_) {
        if (n == n_) return;
        if (re) fftw_free(re);
        if (cx) fftw_free(cx);
        re = fftw_alloc_real(std::size_t(n_) * n_);
        cx = fftw_alloc_complex(std::size_t(n_) * (n_ / 2 + 1));
        n = n_;
    }
    ~Scratch() {
        if (re) fftw_free(re);
        if (cx) fftw_free(cx);
    }
};

thread_local Scratch scratch;

void transform_forward(int n, const double* in, std::complex<double>* out) {
    Plans& p = plans_for(n);
    scratch.ensure(n);
    std::memcpy(scratch.re, in, sizeof(double) * std::size_t(n) * n);
    fftw_execute_dft_r2c(p.fwd, scratch.re, scratch.cx);
    std::memcpy(out, scratch.cx, sizeof(fftw_complex) * std::size_t(n) * (n / 2 + 1));
}

void transform_backward(int n, const std::complex<double>* in, double* out) {
    Plans& p = plans_for(n);
    scratch.ensure(n);
    std::memcpy(scratch.cx, in, sizeof(fftw_complex) * std::size_t(n) * (n / 2 + 1));
    fftw_execute_dft_c2r(p.bwd, scratch.cx, scratch.re);
    const double scale = 1.0 / (double(n) * double(n));
    for (std::size_t i = 0; i < std::size_t(n) * n; ++i) out[i] = scratch.re[i] * scale;
}

}  // namespace

Grid::Grid(int n_, double length_) : n(n_), length(length_) {
    if (n < 16 || (n & (n - 1)) != 0)
        throw std::invalid_argument("Grid: N must be a power of two >= 16");
    if (!(length > 0.0)) throw std::invalid_argument("Grid: L must be positive");
}

SpectralField::SpectralField(const Grid& g, double fill) : grid_(g) {
    phys_.assign(std::size_t(g.n) * g.n, fill);
    phys_valid_ = true;
}

void SpectralField::ensure_phys() const {
    if (phys_valid_) return;
    if (!spec_valid_) throw std::logic_error("SpectralField: empty field");
    phys_.resize(std::size_t(grid_.n) * grid_.n);
    transform_backward(grid_.n, spec_.data(), phys_.data());
    phys_valid_ = true;
}

void SpectralField::ensure_spec() const {
    if (spec_valid_) return;
    if (!phys_valid_) throw std::logic_error("SpectralField: empty field");
    spec_.resize(std::size_t(grid_.n) * (grid_.n / 2 + 1));
    transform_forward(grid_.n, phys_.data(), spec_.data());
    spec_valid_ = true;
}

double* SpectralField::phys() {
    ensure_phys();
    spec_valid_ = false;
    return phys_.data();
}

const double* SpectralField::phys() const {
    ensure_phys();
    return phys_.data();
}

double& SpectralField::at(int ix, int iy) {
    return phys()[std::size_t(iy) * grid_.n + ix];
}

double SpectralField::at(int ix, int iy) const {
    return phys()[std::size_t(iy) * grid_.n + ix];
}

std::complex<double>* SpectralField::spec() {
    ensure_spec();
    phys_valid_ = false;
    return spec_.data();
}

const std::complex<double>* SpectralField::spec() const {
    ensure_spec();
    return spec_.data();
}

std::complex<double>& SpectralField::coeff(int ix, int iy) {
    return spec()[std::size_t(iy) * spec_cols() + ix];
}

std::complex<double> SpectralField::coeff(int ix, int iy) const {
    return spec()[std::size_t(iy) * spec_cols() + ix];
}

void SpectralField::mark_phys_dirty() {
    ensure_spec();
    phys_valid_ = false;
}

void SpectralField::mark_spec_dirty() {
    ensure_phys();
    spec_valid_ = false;
}

double SpectralField::mean() const {
    const double* p = phys();
    double s = 0.0;
    for (std::size_t i = 0; i < std::size_t(grid_.n) * grid_.n; ++i) s += p[i];
    return s / (double(grid_.n) * grid_.n);
}

void SpectralField::subtract_mean() {
    double mu = mean();
    double* p = phys();
    for (std::size_t i = 0; i < std::size_t(grid_.n) * grid_.n; ++i) p[i] -= mu;
}

double SpectralField::l2_norm() const {
    const double* p = phys();
    double s = 0.0;
    for (std::size_t i = 0; i < std::size_t(grid_.n) * grid_.n; ++i) s += p[i] * p[i];
    double cell = grid_.spacing() * grid_.spacing();
    return std::sqrt(s * cell);
}

double SpectralField::max_abs() const {
    const double* p = phys();
    double s = 0.0;
    for (std::size_t i = 0; i < std::size_t(grid_.n) * grid_.n; ++i) s = std::max(s, std::abs(p[i]));
    return s;
}

double SpectralField::l2_norm_spectral() const {
    // Parseval: sum_j f_j^2 = (1/N^2) sum_k |c_k|^2, so
    // int f^2 dx = (L/N)^2 sum f_j^2 = L^2 / N^4 * sum |c_k|^2.
    const std::complex<double>* c = spec();
    const int n = grid_.n, cols = spec_cols();
    double s = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < cols; ++ix) {
            double w = (ix == 0 || ix == n / 2) ? 1.0 : 2.0;  // conjugate pair weight
            s += w * std::norm(c[std::size_t(iy) * cols + ix]);
        }
    }
    return std::sqrt(s) * grid_.length / (double(n) * n);
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    if (!(grid_ == o.grid())) throw std::invalid_argument("SpectralField: grid mismatch");
    double* a = phys();
    const double* b = o.phys();
    for (std::size_t i = 0; i < std::size_t(grid_.n) * grid_.n; ++i) a[i] += b[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    if (!(grid_ == o.grid())) throw std::invalid_argument("SpectralField: grid mismatch");
    double* a = phys();
    const double* b = o.phys();
    for (std::size_t i = 0; i < std::size_t(grid_.n) * grid_.n; ++i) a[i] -= b[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double c) {
    double* a = phys();
    for (std::size_t i = 0; i < std::size_t(grid_.n) * grid_.n; ++i) a[i] *= c;
    return *this;
}

double VectorField::max_norm() const {
    const double* a = x.phys();
    const double* b = y.phys();
    std::size_t total = std::size_t(x.n()) * x.n();
    double s = 0.0;
    for (std::size_t i = 0; i < total; ++i) s = std::max(s, std::hypot(a[i], b[i]));
    return s;
}

}  // namespace supercrit
