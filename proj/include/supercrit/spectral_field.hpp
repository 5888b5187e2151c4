#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace supercrit {

/// Periodic N x N torus [0,L)^2. Physical nodes x_i = i L / N; integer
/// frequencies n in {-N/2 .. N/2-1} map to wavenumbers k = (2 pi / L) n.
struct Grid {
    int n = 0;
    double length = 2.0 * 3.14159265358979323846;

    Grid() = default;
    Grid(int n_, double length_);

    double spacing() const { return length / n; }
    double x(int i) const { return length * i / n; }
    /// Signed integer frequency for row/column index i of a full transform.
    int freq(int i) const { return i <= n / 2 - 1 ? i : i - n; }
    /// Physical wavenumber magnitude for the (i,j) spectral slot.
    double k_scale() const { return 2.0 * 3.14159265358979323846 / length; }
    /// Largest integer frequency kept by the 2/3-rule dealias cut.
    int dealias_max_freq() const { return n / 3; }

    bool operator==(const Grid& o) const { return n == o.n && length == o.length; }
};

/// Real scalar field on a Grid with lazily synchronized Fourier
/// coefficients (FFTW r2c layout: n rows, n/2+1 columns, row-major;
/// coefficients are plain transform sums, i.e. value = (1/N^2) sum c_k e^{ikx}).
class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(const Grid& g, double fill = 0.0);

    const Grid& grid() const { return grid_; }
    int n() const { return grid_.n; }

    /// Physical values, row-major [iy][ix]. Mutation invalidates coefficients.
    double* phys();
    const double* phys() const;
    double& at(int ix, int iy);
    double at(int ix, int iy) const;

    std::complex<double>* spec();
    const std::complex<double>* spec() const;
    int spec_cols() const { return grid_.n / 2 + 1; }
    std::complex<double>& coeff(int ix, int iy);            // ix in [0, n/2]
    std::complex<double> coeff(int ix, int iy) const;

    /// Fill from a function of (x, y).
    template <class F>
    void fill(F&& f) {
        double* p = phys();
        for (int iy = 0; iy < grid_.n; ++iy)
            for (int ix = 0; ix < grid_.n; ++ix)
                p[std::size_t(iy) * grid_.n + ix] = f(grid_.x(ix), grid_.x(iy));
    }

    void mark_phys_dirty();
    void mark_spec_dirty();

    double mean() const;
    void subtract_mean();

    /// sqrt( int f^2 dx ) over the torus (trapezoid = exact for the grid).
    double l2_norm() const;
    double max_abs() const;
    /// Parseval partner of l2_norm, evaluated from the coefficients.
    double l2_norm_spectral() const;

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double c);

private:
    void ensure_phys() const;
    void ensure_spec() const;

    Grid grid_;
    mutable std::vector<double> phys_;
    mutable std::vector<std::complex<double>> spec_;
    mutable bool phys_valid_ = false;
    mutable bool spec_valid_ = false;
};

/// Two-component velocity-style field.
struct VectorField {
    SpectralField x, y;

    VectorField() = default;
    explicit VectorField(const Grid& g) : x(g), y(g) {}
    const Grid& grid() const { return x.grid(); }
    double max_norm() const;
};

}  // namespace supercrit
