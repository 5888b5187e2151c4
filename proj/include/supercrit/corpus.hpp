#pragma once

#include "supercrit/spectral_field.hpp"

#include <cstdint>

namespace supercrit {

/// Seedable generator of real, mean-free, radially band-limited random
/// fields with a prescribed spectral slope. field(i) is deterministic in
/// (seed, i) alone, so corpus sweeps can run in any order or in parallel.
class FieldCorpus {
public:
    /// cutoff_fraction scales the dealias radius: modes with
    /// |k| > cutoff_fraction * k_scale * floor(N/3) are zero. Amplitudes
    /// follow |k|^{spectral_slope} with unit-normal complex weights; the
    /// result is normalized to sup-norm 1.
    FieldCorpus(const Grid& grid, int count, std::uint64_t seed, double spectral_slope = -1.0,
                double cutoff_fraction = 1.0);

    int count() const { return count_; }
    const Grid& grid() const { return grid_; }
    std::uint64_t seed() const { return seed_; }

    SpectralField field(int index) const;

private:
    Grid grid_;
    int count_;
    std::uint64_t seed_;
    double slope_;
    double cutoff_fraction_;
};

/// A cos(n1 x + n2 y).
SpectralField make_single_mode(const Grid& g, int n1, int n2, double amplitude = 1.0);

/// Radially symmetric Gaussian bump about the domain center, band-limited
/// below N/4 and exactly radial up to the (negligible) periodic images.
SpectralField make_radial_bump(const Grid& g, double sigma = 0.35, double amplitude = 1.0);

/// Two co-rotating Gaussian vortices about the domain center, band-limited
/// below N/4.
SpectralField make_two_vortex(const Grid& g, double amplitude = 4.0, double sigma = 0.5,
                              double separation = 1.8);

}  // namespace supercrit
