#pragma once

#include "supercrit/spectral_field.hpp"

#include <cmath>

namespace supercrit {

/// Periodic bicubic (Catmull-Rom) sample of a field at physical (x, y).
inline double bicubic_sample(const SpectralField& f, double x, double y) {
    const Grid& g = f.grid();
    const int n = g.n;
    const double h = g.spacing();
    const double* p = f.phys();

    double gx = x / h, gy = y / h;
    int ix = int(std::floor(gx)), iy = int(std::floor(gy));
    double tx = gx - ix, ty = gy - iy;

    auto wrap = [n](int i) {
        i %= n;
        return i < 0 ? i + n : i;
    };
    auto cr = [](double pm1, double p0, double p1, double p2, double t) {
        return 0.5 * (2.0 * p0 + (-pm1 + p1) * t + (2.0 * pm1 - 5.0 * p0 + 4.0 * p1 - p2) * t * t +
                      (-pm1 + 3.0 * p0 - 3.0 * p1 + p2) * t * t * t);
    };

    double rows[4];
    for (int r = 0; r < 4; ++r) {
        const double* row = p + std::size_t(wrap(iy + r - 1)) * n;
        rows[r] = cr(row[wrap(ix - 1)], row[wrap(ix)], row[wrap(ix + 1)], row[wrap(ix + 2)], tx);
    }
    return cr(rows[0], rows[1], rows[2], rows[3], ty);
}

}  // namespace supercrit
