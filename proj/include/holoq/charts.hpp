#pragma once
// The three control charts and their Wilczek-Zee connections: finite
// difference evaluations of <rho_bar| U^dag dU |rho>, the published closed
// forms, field strengths, and the numeric-vs-analytic sign calibration.

#include "holoq/optics.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace holoq {

enum class ChartKind { SingleModeDS, TwoModeNM, Su2Interferometer };

/// Connection component labels across all charts. X/Y/R1/Theta1 and the
/// derived polar pair R0/Theta0 belong to SingleModeDS; R2..Theta3 to
/// TwoModeNM; Alpha/Beta/Gamma to Su2Interferometer.
enum class Comp { X, Y, R1, Theta1, R0, Theta0, R2, Theta2, R3, Theta3, Alpha, Beta, Gamma };

std::string comp_name(Comp c);
Comp comp_from_name(const std::string& name);

struct ControlChart {
  ChartKind kind = ChartKind::SingleModeDS;
  int cutoff = 32;  // per mode

  static ControlChart single_mode_ds(int cutoff = 32) { return {ChartKind::SingleModeDS, cutoff}; }
  static ControlChart two_mode_nm(int cutoff = 16) { return {ChartKind::TwoModeNM, cutoff}; }
  static ControlChart su2(int cutoff = 16) { return {ChartKind::Su2Interferometer, cutoff}; }

  int n_modes() const;
  int n_coords() const;
  FockSpace space() const;
  CodeBlock block() const;
  std::vector<std::string> coord_names() const;
  std::vector<Comp> coord_comps() const;     // primary components, coordinate order
  std::vector<Comp> analytic_comps() const;  // components with a closed form

  bool operator==(const ControlChart&) const = default;
};

/// A point sigma in a chart. SingleModeDS coords: (x, y, r1, theta1);
/// TwoModeNM: (r2, theta2, r3, theta3); SU(2): (alpha, beta, gamma).
struct ControlPoint {
  ControlChart chart;
  std::vector<double> coords;
};

/// U(sigma): D(lambda)S(mu), N(xi)M(zeta), or Ux(alpha)Uy(beta)Uz(gamma).
Operator control_unitary(const ControlPoint& point);

/// Per-chart sign map fitted between numeric and analytic connections: the
/// closed forms are evaluated at (s_k * sigma_k) and optionally transposed.
struct ChartCalibration {
  std::array<double, 4> coord_signs{1, 1, 1, 1};
  bool transpose = false;
};

/// Ledger values: SingleModeDS flips theta1; the other charts are identity.
ChartCalibration frozen_calibration(ChartKind kind);

struct ConnectionSample {
  Matrix a;
  double hermiticity_defect = 0;  // ||A + A^dag||_max
};

struct NumericOptions {
  double h = 1e-5;
  bool check_truncation = false;  // re-evaluate at doubled cutoff
  double truncation_tol = 1e-6;
};

/// Central-difference evaluation of Eq.-(1)-style components; second order
/// in h. Polar components require r0 >= 1e-8.
ConnectionSample connection_numeric(const ControlPoint& point, Comp comp,
                                    const NumericOptions& options = {});

/// Published closed form under the calibration map. Throws
/// std::invalid_argument for components without one (theta2, theta3).
Matrix connection_analytic(const ControlPoint& point, Comp comp,
                           const ChartCalibration& calibration);
Matrix connection_analytic(const ControlPoint& point, Comp comp);

enum class ConnSource { Analytic, Numeric };

struct FieldStrengthOptions {
  double h = 1e-2;  // five-point stencil step for the derivative terms
  NumericOptions numeric;
};

/// F_ij = d_i A_j - d_j A_i + [A_i, A_j] with derivatives by five-point
/// central differences of the chosen connection source.
Matrix field_strength(const ControlPoint& point, Comp i, Comp j, ConnSource source,
                      const ChartCalibration& calibration, const FieldStrengthOptions& = {});

double commutator_norm(const ControlPoint& point, Comp i, Comp j, ConnSource source,
                       const ChartCalibration& calibration);

struct CalibrationFit {
  ChartCalibration calibration;
  double residual = 0;         // best max elementwise mismatch over probes
  double runner_up_residual = 0;
};

/// Fits the sign map on 5 seeded probe points (numeric side is ground truth).
CalibrationFit calibrate_chart(const ControlChart& chart, std::uint64_t seed = 0);

/// Seeded probe points within the truncation-stable ranges of the chart.
std::vector<ControlPoint> seeded_probe_points(const ControlChart& chart, int count,
                                              std::uint64_t seed);

}  // namespace holoq
