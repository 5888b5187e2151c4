#pragma once

#include "supercrit/multiplier.hpp"
#include "supercrit/spectral_field.hpp"

#include <complex>
#include <functional>

namespace supercrit {

/// Coefficient-wise application of symbol(kx, ky) where (kx, ky) are the
/// physical wavenumbers of the slot. The Nyquist row/column is zeroed by
/// every derivative-like symbol here; dynamics fields live far below it
/// after dealiasing.
SpectralField apply_symbol(const SpectralField& f,
                           const std::function<std::complex<double>(double, double)>& symbol);

/// u = m(|D|) grad^perp Laplacian^{-1} omega. The k = 0 mode of u is zero
/// (Galilean frame choice); omega's mean is ignored, equivalent to
/// subtracting it first. Divergence-free by construction.
VectorField biot_savart(const SpectralField& omega, const Multiplier& m);

/// Coefficient-wise multiplication by m(|k|); k = 0 uses the clamp floor.
SpectralField apply_multiplier(const SpectralField& f, const Multiplier& m);

SpectralField derivative(const SpectralField& f, int dim);
VectorField gradient(const SpectralField& f);
/// (-d/dy f, d/dx f)
VectorField perp_gradient(const SpectralField& f);
SpectralField divergence(const VectorField& u);

/// 2/3-rule truncation: zero all coefficients with max(|n1|,|n2|) > N/3.
void dealias_in_place(SpectralField& f);
SpectralField dealias(const SpectralField& f);

/// Zero all coefficients with |k| > k_max (radial cut, physical units).
void band_limit_in_place(SpectralField& f, double k_max);

/// Spectral embedding onto a finer grid of the same period (zero padding):
/// the same continuum field sampled at higher resolution. Nyquist rows are
/// dropped. Requires fine.n >= f.n and equal lengths.
SpectralField refine_to(const SpectralField& f, const Grid& fine);

/// Velocity gradient tensor d u_i / d x_j derived spectrally from omega.
struct VelocityGradient {
    SpectralField dux_dx, dux_dy, duy_dx, duy_dy;
    const Grid& grid() const { return dux_dx.grid(); }
};

VelocityGradient velocity_gradient(const SpectralField& omega, const Multiplier& m);
VelocityGradient gradient_tensor(const VectorField& u);

/// sup over grid points of the spectral (operator) norm of the 2x2 tensor.
double max_operator_norm(const VelocityGradient& g);
/// Operator norm of [[a, b], [c, d]].
double operator_norm_2x2(double a, double b, double c, double d);

}  // namespace supercrit
