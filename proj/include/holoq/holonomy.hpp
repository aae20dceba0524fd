#pragma once
// Holonomies by three routes: path-ordered products over discretized loops,
// abelianized surface integrals Sigma_I..Sigma_V, and the non-Abelian Stokes
// theorem on axis-aligned rectangles. Plus the Berry-phase line integrals.

#include "holoq/charts.hpp"
#include "holoq/quadrature.hpp"

#include <array>
#include <functional>

namespace holoq {

/// Matrix-valued connection sampled at (coords, coordinate index).
using ConnectionFn = std::function<Matrix(std::span<const double>, int)>;

/// Connection over a chart's primary coordinates from the chosen source.
/// The analytic source throws if a component without a closed form is
/// requested (theta2/theta3 on the two-mode chart).
ConnectionFn make_connection_fn(const ControlChart& chart, ConnSource source,
                                const ChartCalibration& calibration,
                                const NumericOptions& numeric = {});

struct LoopPath {
  ControlChart chart;
  std::vector<std::vector<double>> vertices;  // coordinate tuples
  int steps_per_edge = 200;
};

/// Closed means first == last coordinates; optics-chart angle coordinates
/// may differ by multiples of 2 pi (the control unitary is periodic there).
bool loop_is_closed(const LoopPath& loop, double tol = 1e-9);

enum class Route { PathOrdered, Surface, Stokes };

struct Holonomy {
  Matrix u;
  Route route = Route::PathOrdered;
  double unitarity_defect = 0;
};

/// Ordered product over segments of exp(sum_i A_i(midpoint) dsigma_i), the
/// last segment leftmost; second order in the step size.
Holonomy path_ordered_holonomy(const LoopPath& loop, const ConnectionFn& conn);
Holonomy path_ordered_holonomy(const LoopPath& loop, ConnSource source = ConnSource::Analytic);

/// Axis-aligned rectangle [a_i, b_i] x [a_j, b_j] in the (axis_i, axis_j)
/// coordinate plane, remaining coordinates frozen. b < a reverses the
/// orientation. The boundary loop runs (a_i,a_j) -> (b_i,a_j) -> (b_i,b_j)
/// -> (a_i,b_j) -> close (counterclockwise for b > a).
struct PlanarRegion {
  ControlChart chart;
  int axis_i = 0;
  int axis_j = 1;
  std::vector<double> frozen;  // full coordinate vector; plane entries = base corner
  double a_i = 0, b_i = 0;
  double a_j = 0, b_j = 0;
  int quad_order = 32;
};

LoopPath region_boundary(const PlanarRegion& region, int steps_per_edge = 200);

enum class SigmaKind { I, II, III, IV, V };

/// 2-D Gauss-Legendre quadrature of the named density over the region.
/// Validates the plane and the frozen-angle constraints.
double surface_sigma(const PlanarRegion& region, SigmaKind which);

/// Closed-form antiderivative evaluation for rectangles (quadrature oracle).
double sigma_closed_form(const PlanarRegion& region, SigmaKind which);

/// Generators reconciled against the field strengths (the paper's C_I/C_II
/// sigma labels are swapped; see CONVENTIONS.md): I -> sigma2, II -> sigma1,
/// III -> s3_hat = -diag(1,3), IV -> sigma2_12, V -> sigma1_12.
Matrix sigma_generator(SigmaKind which);

/// exp(-i G Sigma); block-diagonal and exactly unitary.
Holonomy holonomy_from_sigma(SigmaKind which, double sigma);

struct StokesOptions {
  int tau_slices = 192;
  int sigma_order = 32;
  int line_steps = 160;  // Wilson-line discretization per unit edge
  double h = 1e-4;       // field-strength stencil step
};

/// Tau-ordered surface integral W = P_tau exp int T^{-1} F~ T dsigma dtau
/// with F~ = d_sigma A_tau - d_tau A_sigma - [A_sigma, A_tau] and T the
/// Wilson line from the base corner (up the tau edge, then across); slabs of
/// increasing tau multiply on the left. Matches the path-ordered boundary
/// holonomy on axis-aligned rectangles.
Holonomy stokes_holonomy(const PlanarRegion& region, const ConnectionFn& conn,
                         const StokesOptions& options = {});
Holonomy stokes_holonomy(const PlanarRegion& region, ConnSource source = ConnSource::Analytic,
                         const StokesOptions& options = {});

enum class Su2Rect { C1, C2 };

/// Closed forms exp(-i 2 angle sigma2_12) / exp(-i 2 angle sigma3_12); equal
/// to the clockwise traversal of the corresponding rectangle (our
/// counterclockwise traversal gives the inverse).
Holonomy su2_rect_gate(Su2Rect kind, double angle);

/// The (alpha, beta) or (alpha, gamma) rectangle with alpha in [0, pi] and
/// the second coordinate in [0, angle].
PlanarRegion su2_rect_region(Su2Rect kind, double angle, int cutoff = 16);

Matrix sigma1_12();
Matrix sigma2_12();
Matrix sigma3_12();
Matrix s3_hat();

/// ((2n+1)/4) closed-loop integral of (cosh 4 r1 - 1) d theta1 along the
/// polyline, n in {0, 1}; equals the diagonal phase of the path-ordered
/// holonomy for loops confined to the (r1, theta1) plane.
double berry_phase_squeeze(const LoopPath& loop, int level);

/// The same integrand against d r1 (vanishes on closed loops; diagnostic for
/// the differential printed in the paper).
double berry_phase_squeeze_dr(const LoopPath& loop);

/// Diagonal phases (|0>, |1>) of the path-ordered holonomy of a loop in the
/// (x, y) plane at r1 = 0.
std::array<double, 2> berry_phase_displace(const LoopPath& loop, const ConnectionFn& conn);
std::array<double, 2> berry_phase_displace(const LoopPath& loop);

/// Line integral of (y dx - x dy) along the polyline (exact per segment).
double loop_integral_ydx_minus_xdy(const LoopPath& loop);

}  // namespace holoq
