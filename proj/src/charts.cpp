#include "holoq/charts.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>

namespace holoq {

std::string comp_name(Comp c) {
  switch (c) {
    case Comp::X: return "x";
    case Comp::Y: return "y";
    case Comp::R1: return "r1";
    case Comp::Theta1: return "theta1";
    case Comp::R0: return "r0";
    case Comp::Theta0: return "theta0";
    case Comp::R2: return "r2";
    case Comp::Theta2: return "theta2";
    case Comp::R3: return "r3";
    case Comp::Theta3: return "theta3";
    case Comp::Alpha: return "alpha";
    case Comp::Beta: return "beta";
    case Comp::Gamma: return "gamma";
  }
  throw std::logic_error("comp_name: bad enum");
}

Comp comp_from_name(const std::string& name) {
  static const std::map<std::string, Comp> table{
      {"x", Comp::X},       {"y", Comp::Y},           {"r1", Comp::R1},
      {"theta1", Comp::Theta1}, {"r0", Comp::R0},     {"theta0", Comp::Theta0},
      {"r2", Comp::R2},     {"theta2", Comp::Theta2}, {"r3", Comp::R3},
      {"theta3", Comp::Theta3}, {"alpha", Comp::Alpha}, {"beta", Comp::Beta},
      {"gamma", Comp::Gamma}};
  auto it = table.find(name);
  if (it == table.end()) throw std::invalid_argument("unknown component: " + name);
  return it->second;
}

int ControlChart::n_modes() const { return kind == ChartKind::SingleModeDS ? 1 : 2; }

int ControlChart::n_coords() const { return kind == ChartKind::Su2Interferometer ? 3 : 4; }

FockSpace ControlChart::space() const { return FockSpace(n_modes(), cutoff); }

CodeBlock ControlChart::block() const {
  return kind == ChartKind::SingleModeDS ? CodeBlock::qubit() : CodeBlock::two_mode_block();
}

std::vector<std::string> ControlChart::coord_names() const {
  std::vector<std::string> names;
  for (Comp c : coord_comps()) names.push_back(comp_name(c));
  return names;
}

std::vector<Comp> ControlChart::coord_comps() const {
  switch (kind) {
    case ChartKind::SingleModeDS: return {Comp::X, Comp::Y, Comp::R1, Comp::Theta1};
    case ChartKind::TwoModeNM: return {Comp::R2, Comp::Theta2, Comp::R3, Comp::Theta3};
    case ChartKind::Su2Interferometer: return {Comp::Alpha, Comp::Beta, Comp::Gamma};
  }
  throw std::logic_error("coord_comps: bad enum");
}

std::vector<Comp> ControlChart::analytic_comps() const {
  switch (kind) {
    case ChartKind::SingleModeDS:
      return {Comp::X, Comp::Y, Comp::R1, Comp::Theta1, Comp::R0, Comp::Theta0};
    case ChartKind::TwoModeNM: return {Comp::R2, Comp::R3};
    case ChartKind::Su2Interferometer: return {Comp::Alpha, Comp::Beta, Comp::Gamma};
  }
  throw std::logic_error("analytic_comps: bad enum");
}

namespace {

void check_point(const ControlPoint& p) {
  if (static_cast<int>(p.coords.size()) != p.chart.n_coords())
    throw std::invalid_argument("ControlPoint: coordinate count mismatch");
  // r-type coordinates must be nonnegative
  const auto comps = p.chart.coord_comps();
  for (size_t i = 0; i < comps.size(); ++i) {
    const bool radial = comps[i] == Comp::R1 || comps[i] == Comp::R2 || comps[i] == Comp::R3;
    if (radial && p.coords[i] < 0)
      throw std::invalid_argument("ControlPoint: radial coordinate " + comp_name(comps[i]) +
                                  " must be >= 0");
  }
}

int coord_index(const ControlChart& chart, Comp comp) {
  const auto comps = chart.coord_comps();
  for (size_t i = 0; i < comps.size(); ++i)
    if (comps[i] == comp) return static_cast<int>(i);
  return -1;
}

bool comp_in_chart(const ControlChart& chart, Comp comp) {
  if (coord_index(chart, comp) >= 0) return true;
  return chart.kind == ChartKind::SingleModeDS && (comp == Comp::R0 || comp == Comp::Theta0);
}

}  // namespace

Operator control_unitary(const ControlPoint& point) {
  check_point(point);
  const auto& c = point.coords;
  const FockSpace sp = point.chart.space();
  switch (point.chart.kind) {
    case ChartKind::SingleModeDS: {
      const Complex lambda(c[0], c[1]);
      const Complex mu = std::polar(c[2], c[3]);
      Operator d = displacer(sp, 0, lambda);
      Operator s = squeezer(sp, 0, mu);
      return {sp, d.mat * s.mat};
    }
    case ChartKind::TwoModeNM: {
      const Complex zeta = std::polar(c[0], c[1]);
      const Complex xi = std::polar(c[2], c[3]);
      Operator n = two_mode_displacer(sp, 0, 1, xi);
      Operator m = two_mode_squeezer(sp, 0, 1, zeta);
      return {sp, n.mat * m.mat};
    }
    case ChartKind::Su2Interferometer:
      return su2_unitary(sp, 0, 1, {c[0], c[1], c[2]});
  }
  throw std::logic_error("control_unitary: bad chart");
}

ChartCalibration frozen_calibration(ChartKind kind) {
  ChartCalibration cal;
  if (kind == ChartKind::SingleModeDS) cal.coord_signs = {1, 1, 1, -1};  // theta1 -> -theta1
  return cal;
}

namespace {

// evaluates U at shifted coords; `polar` handles the (r0, theta0) pair
Matrix unitary_at(const ControlPoint& point, Comp comp, double shift) {
  ControlPoint p = point;
  if (comp == Comp::R0 || comp == Comp::Theta0) {
    double r0 = std::hypot(p.coords[0], p.coords[1]);
    double t0 = std::atan2(p.coords[1], p.coords[0]);
    if (r0 < 1e-8)
      throw std::invalid_argument("polar components undefined at r0 < 1e-8");
    (comp == Comp::R0 ? r0 : t0) += shift;
    if (r0 < 0) throw std::invalid_argument("polar step crossed r0 = 0");
    p.coords[0] = r0 * std::cos(t0);
    p.coords[1] = r0 * std::sin(t0);
  } else {
    const int i = coord_index(p.chart, comp);
    if (i < 0) throw std::invalid_argument("component not in chart: " + comp_name(comp));
    p.coords[i] += shift;
    // radial coordinates clamp at 0 is NOT applied: finite differences near
    // r = 0 use one-sided ranges chosen by the caller.
    if (p.coords[i] < 0 &&
        (comp == Comp::R1 || comp == Comp::R2 || comp == Comp::R3)) {
      // evaluate via the angle convention r e^{i theta} with r < 0 absorbed
      // as theta + pi; U depends on the product only.
      const int ti = i + 1;  // theta follows its r in every chart layout
      p.coords[i] = -p.coords[i];
      p.coords[ti] += std::numbers::pi;
    }
  }
  return control_unitary(p).mat;
}

ConnectionSample connection_numeric_at_cutoff(const ControlPoint& point, Comp comp, double h,
                                              int cutoff) {
  ControlPoint p = point;
  p.chart.cutoff = cutoff;
  const Matrix u0 = control_unitary(p).mat;
  const Matrix du = (unitary_at(p, comp, h) - unitary_at(p, comp, -h)) / (2 * h);
  const Matrix full = u0.adjoint() * du;
  const Matrix a = project_block(p.chart.space(), full, p.chart.block());
  ConnectionSample out;
  out.a = a;
  out.hermiticity_defect = max_abs(a + a.adjoint());
  return out;
}

}  // namespace

ConnectionSample connection_numeric(const ControlPoint& point, Comp comp,
                                    const NumericOptions& options) {
  check_point(point);
  if (!comp_in_chart(point.chart, comp))
    throw std::invalid_argument("component not in chart: " + comp_name(comp));
  if (options.h <= 0) throw std::invalid_argument("connection_numeric: h must be > 0");
  ConnectionSample s =
      connection_numeric_at_cutoff(point, comp, options.h, point.chart.cutoff);
  if (options.check_truncation) {
    const ConnectionSample s2 =
        connection_numeric_at_cutoff(point, comp, options.h, 2 * point.chart.cutoff);
    const double change = max_abs(s.a - s2.a);
    if (change > options.truncation_tol)
      throw convergence_error("connection_numeric: entries changed by " + std::to_string(change) +
                              " under cutoff doubling at " + comp_name(comp));
  }
  return s;
}

namespace {

Matrix analytic_single_mode(Comp comp, double x, double y, double r1, double t1) {
  const double ch = std::cosh(2 * r1), sh = std::sinh(2 * r1);
  const Complex i(0, 1);
  Matrix a = Matrix::Zero(2, 2);
  switch (comp) {
    case Comp::X:
      a(0, 0) = a(1, 1) = -i * y;
      a(0, 1) = -(ch - std::exp(i * t1) * sh);
      a(1, 0) = ch - std::exp(-i * t1) * sh;
      return a;
    case Comp::Y:
      a(0, 0) = a(1, 1) = i * x;
      a(0, 1) = i * (ch + std::exp(i * t1) * sh);
      a(1, 0) = i * (ch + std::exp(-i * t1) * sh);
      return a;
    case Comp::R1:
      return a;
    case Comp::Theta1:
      a(0, 0) = i * 0.25 * (std::cosh(4 * r1) - 1);
      a(1, 1) = 3.0 * a(0, 0);
      return a;
    case Comp::R0: {
      const double r0 = std::hypot(x, y), t0 = std::atan2(y, x);
      if (r0 < 1e-8) throw std::invalid_argument("polar components undefined at r0 < 1e-8");
      a(0, 1) = -(std::exp(-i * t0) * ch - std::exp(i * (t0 + t1)) * sh);
      a(1, 0) = std::exp(i * t0) * ch - std::exp(-i * (t0 + t1)) * sh;
      return a;
    }
    case Comp::Theta0: {
      const double r0 = std::hypot(x, y), t0 = std::atan2(y, x);
      if (r0 < 1e-8) throw std::invalid_argument("polar components undefined at r0 < 1e-8");
      a(0, 0) = a(1, 1) = i * r0 * r0;
      a(0, 1) = i * r0 * (std::exp(-i * t0) * ch + std::exp(i * (t0 + t1)) * sh);
      a(1, 0) = i * r0 * (std::exp(i * t0) * ch + std::exp(-i * (t0 + t1)) * sh);
      return a;
    }
    default:
      throw std::invalid_argument("no closed form for " + comp_name(comp) +
                                  " on the single-mode chart");
  }
}

Matrix analytic_two_mode(Comp comp, double r2, double t2, double /*r3*/, double t3) {
  const Complex i(0, 1);
  Matrix a = Matrix::Zero(4, 4);
  switch (comp) {
    case Comp::R2:
      a(0, 3) = -std::exp(-i * t2);
      a(3, 0) = std::exp(i * t2);
      return a;
    case Comp::R3: {
      const double f = 2 * std::cosh(r2) * std::cosh(r2) - 1;  // = cosh(2 r2)
      a(1, 2) = -f * std::exp(-i * t3);
      a(2, 1) = f * std::exp(i * t3);
      return a;
    }
    default:
      throw std::invalid_argument("no closed form for " + comp_name(comp) +
                                  " on the two-mode chart (theta2/theta3 are numeric-only)");
  }
}

Matrix analytic_su2(Comp comp, double /*al*/, double be, double ga) {
  const Complex i(0, 1);
  Matrix a = Matrix::Zero(4, 4);
  switch (comp) {
    case Comp::Alpha:
      a(1, 1) = std::sin(be);
      a(2, 2) = -std::sin(be);
      a(1, 2) = std::cos(be) * std::exp(i * ga);
      a(2, 1) = std::cos(be) * std::exp(-i * ga);
      return 0.5 * i * a;
    case Comp::Beta:
      a(1, 2) = std::exp(i * ga);
      a(2, 1) = -std::exp(-i * ga);
      return -0.5 * a;
    case Comp::Gamma:
      a(1, 1) = 1;
      a(2, 2) = -1;
      return -0.5 * i * a;
    default:
      throw std::invalid_argument("no closed form for " + comp_name(comp) + " on the SU(2) chart");
  }
}

}  // namespace

Matrix connection_analytic(const ControlPoint& point, Comp comp,
                           const ChartCalibration& calibration) {
  check_point(point);
  std::vector<double> c = point.coords;
  for (size_t k = 0; k < c.size(); ++k) c[k] *= calibration.coord_signs[k];
  Matrix a;
  switch (point.chart.kind) {
    case ChartKind::SingleModeDS: a = analytic_single_mode(comp, c[0], c[1], c[2], c[3]); break;
    case ChartKind::TwoModeNM: a = analytic_two_mode(comp, c[0], c[1], c[2], c[3]); break;
    case ChartKind::Su2Interferometer: a = analytic_su2(comp, c[0], c[1], c[2]); break;
    default: throw std::logic_error("connection_analytic: bad chart");
  }
  if (calibration.transpose) a.transposeInPlace();
  return a;
}

Matrix connection_analytic(const ControlPoint& point, Comp comp) {
  return connection_analytic(point, comp, frozen_calibration(point.chart.kind));
}

namespace {

Matrix connection_by_source(const ControlPoint& p, Comp comp, ConnSource source,
                            const ChartCalibration& cal, const NumericOptions& num) {
  if (source == ConnSource::Analytic) return connection_analytic(p, comp, cal);
  return connection_numeric(p, comp, num).a;
}

}  // namespace

Matrix field_strength(const ControlPoint& point, Comp i, Comp j, ConnSource source,
                      const ChartCalibration& calibration, const FieldStrengthOptions& options) {
  check_point(point);
  if (i == j) {
    const int d = point.chart.block().dim();
    return Matrix::Zero(d, d);
  }
  auto conn_at = [&](Comp vary, double shift, Comp comp) {
    ControlPoint p = point;
    const int vi = coord_index(p.chart, vary);
    if (vi < 0) throw std::invalid_argument("field_strength: polar components unsupported here");
    p.coords[vi] += shift;
    if (p.coords[vi] < 0 && (vary == Comp::R1 || vary == Comp::R2 || vary == Comp::R3)) {
      // reflect across r = 0: r e^{i theta} with negative r equals
      // (-r) e^{i(theta+pi)}
      p.coords[vi] = -p.coords[vi];
      p.coords[vi + 1] += std::numbers::pi;
    }
    return connection_by_source(p, comp, source, calibration, options.numeric);
  };
  const double h = options.h;
  auto stencil = [&](Comp vary, Comp comp) {  // five-point first derivative
    return (-conn_at(vary, 2 * h, comp) + 8.0 * conn_at(vary, h, comp) -
            8.0 * conn_at(vary, -h, comp) + conn_at(vary, -2 * h, comp)) /
           (12.0 * h);
  };
  const Matrix di_aj = stencil(i, j);
  const Matrix dj_ai = stencil(j, i);
  const Matrix ai = connection_by_source(point, i, source, calibration, options.numeric);
  const Matrix aj = connection_by_source(point, j, source, calibration, options.numeric);
  return di_aj - dj_ai + ai * aj - aj * ai;
}

double commutator_norm(const ControlPoint& point, Comp i, Comp j, ConnSource source,
                       const ChartCalibration& calibration) {
  const NumericOptions num;
  const Matrix ai = connection_by_source(point, i, source, calibration, num);
  const Matrix aj = connection_by_source(point, j, source, calibration, num);
  return max_abs(ai * aj - aj * ai);
}

std::vector<ControlPoint> seeded_probe_points(const ControlChart& chart, int count,
                                              std::uint64_t seed) {
  // truncation-stable ranges at the default cutoffs; see CONVENTIONS.md
  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL + static_cast<int>(chart.kind)));
  auto uniform = [&](double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  };
  std::vector<ControlPoint> pts;
  pts.reserve(count);
  for (int k = 0; k < count; ++k) {
    switch (chart.kind) {
      case ChartKind::SingleModeDS:
        pts.push_back({chart,
                       {uniform(-1.2, 1.2), uniform(-1.2, 1.2), uniform(0.0, 0.2),
                        uniform(-3.1, 3.1)}});
        break;
      case ChartKind::TwoModeNM:
        pts.push_back({chart,
                       {uniform(0.0, 0.5), uniform(-3.1, 3.1), uniform(0.0, 1.0),
                        uniform(-3.1, 3.1)}});
        break;
      case ChartKind::Su2Interferometer:
        pts.push_back({chart, {uniform(-3.1, 3.1), uniform(-3.1, 3.1), uniform(-3.1, 3.1)}});
        break;
    }
  }
  return pts;
}

CalibrationFit calibrate_chart(const ControlChart& chart, std::uint64_t seed) {
  const auto points = seeded_probe_points(chart, 5, seed);
  const auto comps = chart.analytic_comps();
  // numeric side computed once per point/component
  std::vector<std::vector<Matrix>> numeric(points.size());
  for (size_t p = 0; p < points.size(); ++p)
    for (Comp c : comps) {
      if ((c == Comp::R0 || c == Comp::Theta0) &&
          std::hypot(points[p].coords[0], points[p].coords[1]) < 0.05) {
        numeric[p].push_back(Matrix());  // skipped near the polar singularity
        continue;
      }
      numeric[p].push_back(connection_numeric(points[p], c).a);
    }

  CalibrationFit fit;
  double best = std::numeric_limits<double>::infinity();
  double second = best;
  const int ncoord = chart.n_coords();
  for (int mask = 0; mask < (1 << ncoord); ++mask) {
    for (int tr = 0; tr < 2; ++tr) {
      ChartCalibration cal;
      for (int b = 0; b < ncoord; ++b) cal.coord_signs[b] = (mask >> b) & 1 ? -1.0 : 1.0;
      cal.transpose = tr != 0;
      double resid = 0;
      for (size_t p = 0; p < points.size(); ++p)
        for (size_t ci = 0; ci < comps.size(); ++ci) {
          if (numeric[p][ci].size() == 0) continue;
          const Matrix ana = connection_analytic(points[p], comps[ci], cal);
          resid = std::max(resid, max_abs(numeric[p][ci] - ana));
        }
      if (resid < best) {
        second = best;
        best = resid;
        fit.calibration = cal;
      } else if (resid < second) {
        second = resid;
      }
    }
  }
  fit.residual = best;
  fit.runner_up_residual = second;
  return fit;
}

}  // namespace holoq
