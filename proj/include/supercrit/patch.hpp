#pragma once

#include "supercrit/euler.hpp"
#include "supercrit/fourier_ops.hpp"
#include "supercrit/multiplier.hpp"
#include "supercrit/spectral_field.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace supercrit {

struct Vec2 {
    double x = 0.0, y = 0.0;
};

/// Level-set state of the patch problem: E = {phi > 0}, vorticity
/// a0 * chi_E mollified over epsilon_smooth. phi is built as a saturated
/// signed-distance profile (width profile_width), so |grad phi| ~ 1 near the
/// boundary and band membership |phi| < band_width reads as physical
/// distance.
struct PatchState {
    SpectralField phi;
    double a0 = 1.0;
    double band_width = 0.0;      // physical units
    double epsilon_smooth = 0.0;  // indicator mollification width
    double profile_width = 0.0;
    double grad_floor = 0.02;     // |grad phi| floor on the band
    double t = 0.0;
};

/// Radially symmetric patch: phi = w tanh((R - r)/w).
PatchState make_circle_patch(const Grid& g, double a0, double radius,
                             double profile_width_cells = 8.0);
/// Elliptical patch via the scaled elliptical pseudo-distance
/// b (1 - sqrt((dx/a)^2 + (dy/b)^2)), saturated with tanh.
PatchState make_ellipse_patch(const Grid& g, double a0, double semi_x, double semi_y,
                              double profile_width_cells = 8.0);
/// Horizontal strip |y - L/2| < half_width with two straight edges.
/// Synthetic geometry for the arc-measure checks; it wraps around the
/// torus, so it is rejected by patch_velocity's margin guard.
PatchState make_band_patch(const Grid& g, double a0, double half_width,
                           double profile_width_cells = 8.0);

/// Mollified indicator a0 * (1 + tanh(phi/eps))/2.
SpectralField patch_indicator(const PatchState& s);

/// Area of E measured through the mollified indicator.
double patch_area(const PatchState& s);

/// Grid indices of the near-boundary band {|phi| < band_width}.
std::vector<std::size_t> band_cells(const PatchState& s);

/// Modified Biot-Savart velocity of the patch. Throws if E touches the
/// L/8 margin frame around the torus seam.
VectorField patch_velocity(const PatchState& s, const Multiplier& m);

/// inf |grad phi| over the band.
double grad_inf_band(const PatchState& s);

struct HolderEstimate {
    double seminorm = 0.0;   // pair-sampled sup |f(x)-f(y)| / |x-y|^mu
    double y_proxy = 0.0;    // LP Y-norm of |grad phi| components at mu
    int pairs_used = 0;
};

/// Pair-sampled Holder seminorm of grad phi restricted to the band, with
/// dyadic separation bins; throws if the band has < 100 cells.
HolderEstimate grad_holder_seminorm(const PatchState& s, double mu, std::uint64_t seed,
                                    int pair_budget = 4096);

/// Unit tangent tau = grad^perp phi / |grad^perp phi| on the band cells.
struct TangentField {
    std::vector<std::size_t> cells;
    std::vector<double> tx, ty;
};

TangentField tangent_field(const PatchState& s);

struct TangentialReport {
    double tangential_sup = 0.0;   // sup_band |<grad(u) tau, tau>|
    double band_grad_sup = 0.0;    // sup_band ||grad u||  (for contrast)
    double delta_mu = 0.0;
    double grad_inf = 0.0;
    double grad_holder = 0.0;
    double normalized_ratio = 0.0; // tangential_sup / (1 + m(Delta) Log(Delta))
};

/// Contracts grad u with the boundary tangent twice and sups over the band;
/// also reports the unnormalized band sup of |grad u| and the ratio against
/// 1 + m(Delta_mu) Log(Delta_mu).
TangentialReport tangential_gradient_sup(const PatchState& s, const Multiplier& m, double mu,
                                         std::uint64_t seed);

struct ArcMeasureRow {
    double rho = 0.0;
    double measure = 0.0;  // H^1 of the symmetric difference on the unit circle
    double bound = 0.0;    // 2 pi ((1+2^mu) d/rho + 2^mu (rho/mu)^mu)
};

struct ArcMeasureTable {
    Vec2 x0;
    Vec2 boundary_point;
    double d = 0.0;       // distance from x0 to the boundary
    double delta = 0.0;   // delta^mu = 1 / (2 Delta_mu)
    double delta_mu = 0.0;
    std::vector<ArcMeasureRow> rows;
};

/// Samples the unit circle at `circle_samples` points around x0, marks
/// membership of x0 + rho z in E by the interpolated sign of phi, compares
/// against the half circle selected by grad phi at the nearest boundary
/// point, and returns the symmetric-difference arc measure per rho.
ArcMeasureTable arc_measure(const PatchState& s, Vec2 x0, std::span<const double> rhos, double mu,
                            int circle_samples = 4096, std::uint64_t seed = 7);

struct PatchRunConfig {
    Multiplier multiplier = Multiplier::constant(1.0);
    Stepper stepper = Stepper::RK4;
    DtPolicy dt;
    double t_end = 1.0;
    double cadence = 0.1;
    double mu = 0.5;              // tracked Holder exponent
    double epsilon_losing = 0.1;  // the losing-estimate epsilon
    std::uint64_t seed = 1;
    int pair_budget = 4096;
};

struct PatchRecord {
    double t = 0.0;
    double area = 0.0;
    double grad_inf = 0.0;
    double grad_holder_mu = 0.0;     // |grad phi|_mu
    double grad_holder_gamma = 0.0;  // |grad phi|_{mu-eps}
    double delta_mu = 0.0;
    double delta_gamma = 0.0;
    double tangential_sup = 0.0;
    double grad_u_band_sup = 0.0;
    double v_accum = 0.0;   // V(t) = int (1+Log Delta_gamma) ds, C(gamma) = 1
    double mu_t = 0.0;      // mu - eta V(t), eta = eps / V(T), filled post-run
};

struct PatchRunResult {
    std::vector<PatchRecord> records;
    PatchState final_state;
    bool regularity_lost = false;
    bool blew_up = false;
    double failure_time = 0.0;
    std::string failure_reason;
    double eta = 0.0;
    int steps_taken = 0;
};

/// phi_t + u . grad phi = 0 with u from the Modified Biot-Savart Law.
/// Diagnostics are appended each cadence; V(t) accumulates
/// (1 + Log Delta_gamma) with the reported constant C(gamma) = 1; the losing
/// exponent mu_t = mu - eta V(t) is back-filled with eta = eps / V(T).
/// Stops with a flag if |grad phi| on the band falls under grad_floor.
PatchRunResult run_patch(const PatchState& initial, const PatchRunConfig& config);

/// One transport step of phi (RK4 pseudospectral or semi-Lagrangian),
/// recomputing u from the level set each stage.
PatchState patch_step(const PatchState& s, const PatchRunConfig& config, double dt);

/// Max absolute radial displacement of the {phi = 0} contour between two
/// level sets, sampled along rays about the domain center. Returns the
/// displacement in physical units.
double boundary_displacement(const SpectralField& phi0, const SpectralField& phi1,
                             int n_rays = 256);

}  // namespace supercrit
