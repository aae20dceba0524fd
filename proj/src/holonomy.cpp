#include "holoq/holonomy.hpp"

#include <cmath>
#include <numbers>

namespace holoq {

namespace {
constexpr double kPi = std::numbers::pi;

bool is_angle_coord(const ControlChart& chart, int idx) {
  if (chart.kind == ChartKind::Su2Interferometer) return false;  // not 2pi-periodic in U
  const Comp c = chart.coord_comps()[idx];
  return c == Comp::Theta1 || c == Comp::Theta2 || c == Comp::Theta3;
}
}  // namespace

ConnectionFn make_connection_fn(const ControlChart& chart, ConnSource source,
                                const ChartCalibration& calibration,
                                const NumericOptions& numeric) {
  const auto comps = chart.coord_comps();
  return [chart, source, calibration, numeric, comps](std::span<const double> coords,
                                                      int idx) -> Matrix {
    ControlPoint p{chart, std::vector<double>(coords.begin(), coords.end())};
    // radial coordinates reflect across 0: r e^{i theta} = (-r) e^{i(theta+pi)}
    const Comp c = comps[idx];
    if (p.coords[idx] < 0 && (c == Comp::R1 || c == Comp::R2 || c == Comp::R3)) {
      p.coords[idx] = -p.coords[idx];
      p.coords[idx + 1] += kPi;
    }
    if (source == ConnSource::Analytic) return connection_analytic(p, c, calibration);
    return connection_numeric(p, c, numeric).a;
  };
}

bool loop_is_closed(const LoopPath& loop, double tol) {
  if (loop.vertices.size() < 2) return true;
  const auto& first = loop.vertices.front();
  const auto& last = loop.vertices.back();
  if (first.size() != last.size()) return false;
  for (size_t i = 0; i < first.size(); ++i) {
    double d = last[i] - first[i];
    if (is_angle_coord(loop.chart, static_cast<int>(i)))
      d = std::remainder(d, 2 * kPi);
    if (std::abs(d) > tol) return false;
  }
  return true;
}

Holonomy path_ordered_holonomy(const LoopPath& loop, const ConnectionFn& conn) {
  if (!loop_is_closed(loop)) throw std::invalid_argument("path_ordered_holonomy: loop not closed");
  if (loop.steps_per_edge < 1)
    throw std::invalid_argument("path_ordered_holonomy: steps_per_edge must be >= 1");
  const int d = loop.chart.block().dim();
  Matrix u = Matrix::Identity(d, d);
  const int nc = loop.chart.n_coords();
  std::vector<double> mid(nc);
  for (size_t e = 0; e + 1 < loop.vertices.size(); ++e) {
    const auto& p = loop.vertices[e];
    const auto& q = loop.vertices[e + 1];
    if (static_cast<int>(p.size()) != nc || static_cast<int>(q.size()) != nc)
      throw std::invalid_argument("path_ordered_holonomy: vertex arity mismatch");
    for (int s = 0; s < loop.steps_per_edge; ++s) {
      const double t = (s + 0.5) / loop.steps_per_edge;
      Matrix g = Matrix::Zero(d, d);
      bool any = false;
      for (int i = 0; i < nc; ++i) {
        mid[i] = p[i] + (q[i] - p[i]) * t;
      }
      for (int i = 0; i < nc; ++i) {
        const double dcoord = (q[i] - p[i]) / loop.steps_per_edge;
        if (dcoord == 0.0) continue;
        g += conn(mid, i) * dcoord;
        any = true;
      }
      if (any) u = expm_antihermitian(g, 1e-6) * u;
    }
  }
  return {u, Route::PathOrdered, unitarity_defect(u)};
}

Holonomy path_ordered_holonomy(const LoopPath& loop, ConnSource source) {
  return path_ordered_holonomy(
      loop, make_connection_fn(loop.chart, source, frozen_calibration(loop.chart.kind)));
}

LoopPath region_boundary(const PlanarRegion& region, int steps_per_edge) {
  const int nc = region.chart.n_coords();
  if (static_cast<int>(region.frozen.size()) != nc)
    throw std::invalid_argument("region_boundary: frozen coordinate count mismatch");
  auto mk = [&](double u, double v) {
    std::vector<double> c = region.frozen;
    c[region.axis_i] = u;
    c[region.axis_j] = v;
    return c;
  };
  LoopPath loop;
  loop.chart = region.chart;
  loop.steps_per_edge = steps_per_edge;
  loop.vertices = {mk(region.a_i, region.a_j), mk(region.b_i, region.a_j),
                   mk(region.b_i, region.b_j), mk(region.a_i, region.b_j),
                   mk(region.a_i, region.a_j)};
  return loop;
}

namespace {

struct SigmaSpec {
  ChartKind chart;
  Comp plane_i, plane_j;
  std::vector<std::pair<Comp, double>> frozen_angles;
  double (*density)(double, double);
};

const SigmaSpec& sigma_spec(SigmaKind which) {
  static const SigmaSpec I{ChartKind::SingleModeDS, Comp::X, Comp::R1,
                           {{Comp::Theta1, 0.0}},
                           [](double, double r1) { return 2.0 * std::exp(-2.0 * r1); }};
  static const SigmaSpec II{ChartKind::SingleModeDS, Comp::Y, Comp::R1,
                            {{Comp::Theta1, 0.0}},
                            [](double, double r1) { return 2.0 * std::exp(2.0 * r1); }};
  static const SigmaSpec III{ChartKind::SingleModeDS, Comp::R1, Comp::Theta1,
                             {},
                             [](double r1, double) { return std::sinh(4.0 * r1); }};
  static const SigmaSpec IV{ChartKind::TwoModeNM, Comp::R2, Comp::R3,
                            {{Comp::Theta2, 0.0}, {Comp::Theta3, 0.0}},
                            [](double r2, double) { return 2.0 * std::sinh(2.0 * r2); }};
  static const SigmaSpec V{ChartKind::TwoModeNM, Comp::R2, Comp::R3,
                           {{Comp::Theta2, 0.0}, {Comp::Theta3, 3.0 * kPi / 2.0}},
                           [](double r2, double) { return 2.0 * std::sinh(2.0 * r2); }};
  switch (which) {
    case SigmaKind::I: return I;
    case SigmaKind::II: return II;
    case SigmaKind::III: return III;
    case SigmaKind::IV: return IV;
    case SigmaKind::V: return V;
  }
  throw std::logic_error("sigma_spec: bad enum");
}

int comp_index_in(const ControlChart& chart, Comp c) {
  const auto comps = chart.coord_comps();
  for (size_t i = 0; i < comps.size(); ++i)
    if (comps[i] == c) return static_cast<int>(i);
  throw std::invalid_argument("component not a chart coordinate: " + comp_name(c));
}

void validate_region_for_sigma(const PlanarRegion& region, SigmaKind which) {
  const SigmaSpec& spec = sigma_spec(which);
  if (region.chart.kind != spec.chart)
    throw std::invalid_argument("surface_sigma: region chart does not match the named Sigma");
  if (region.axis_i == region.axis_j)
    throw std::invalid_argument("surface_sigma: plane coordinates must differ");
  if (region.axis_i != comp_index_in(region.chart, spec.plane_i) ||
      region.axis_j != comp_index_in(region.chart, spec.plane_j))
    throw std::invalid_argument("surface_sigma: region plane does not match the named Sigma");
  for (const auto& [comp, value] : spec.frozen_angles) {
    const int idx = comp_index_in(region.chart, comp);
    if (std::abs(std::remainder(region.frozen[idx] - value, 2 * kPi)) > 1e-12)
      throw std::invalid_argument("surface_sigma: frozen " + comp_name(comp) +
                                  " violates the named Sigma's constraint");
  }
}

}  // namespace

double surface_sigma(const PlanarRegion& region, SigmaKind which) {
  validate_region_for_sigma(region, which);
  const SigmaSpec& spec = sigma_spec(which);
  const auto gx = gauss_legendre_on(region.quad_order, region.a_i, region.b_i);
  const auto gy = gauss_legendre_on(region.quad_order, region.a_j, region.b_j);
  double sum = 0;
  for (int i = 0; i < region.quad_order; ++i)
    for (int j = 0; j < region.quad_order; ++j)
      sum += gx.weights[i] * gy.weights[j] * spec.density(gx.nodes[i], gy.nodes[j]);
  return sum;
}

double sigma_closed_form(const PlanarRegion& region, SigmaKind which) {
  validate_region_for_sigma(region, which);
  const double wi = region.b_i - region.a_i;
  const double wj = region.b_j - region.a_j;
  switch (which) {
    case SigmaKind::I:
      return wi * (std::exp(-2 * region.a_j) - std::exp(-2 * region.b_j));
    case SigmaKind::II:
      return wi * (std::exp(2 * region.b_j) - std::exp(2 * region.a_j));
    case SigmaKind::III:
      return wj * (std::cosh(4 * region.b_i) - std::cosh(4 * region.a_i)) / 4.0;
    case SigmaKind::IV:
    case SigmaKind::V:
      return wj * (std::cosh(2 * region.b_i) - std::cosh(2 * region.a_i));
  }
  throw std::logic_error("sigma_closed_form: bad enum");
}

Matrix sigma1_12() {
  Matrix m = Matrix::Zero(4, 4);
  m(1, 2) = m(2, 1) = 1;
  return m;
}

Matrix sigma2_12() {
  Matrix m = Matrix::Zero(4, 4);
  m(1, 2) = Complex(0, -1);
  m(2, 1) = Complex(0, 1);
  return m;
}

Matrix sigma3_12() {
  Matrix m = Matrix::Zero(4, 4);
  m(1, 1) = 1;
  m(2, 2) = -1;
  return m;
}

Matrix s3_hat() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = -1;
  m(1, 1) = -3;
  return m;
}

Matrix sigma_generator(SigmaKind which) {
  switch (which) {
    case SigmaKind::I: {
      Matrix m(2, 2);
      m << 0, Complex(0, -1), Complex(0, 1), 0;
      return m;  // sigma2
    }
    case SigmaKind::II: {
      Matrix m(2, 2);
      m << 0, 1, 1, 0;
      return m;  // sigma1
    }
    case SigmaKind::III: return s3_hat();
    case SigmaKind::IV: return sigma2_12();
    case SigmaKind::V: return sigma1_12();
  }
  throw std::logic_error("sigma_generator: bad enum");
}

Holonomy holonomy_from_sigma(SigmaKind which, double sigma) {
  const Matrix g = sigma_generator(which);
  const Matrix u = expm_antihermitian(Complex(0, -1) * sigma * g);
  return {u, Route::Surface, unitarity_defect(u)};
}

namespace {

// Wilson line along a straight coordinate segment, midpoint-sampled.
Matrix wilson_line(const ConnectionFn& conn, std::span<const double> from,
                   std::span<const double> to, int steps, int dim) {
  Matrix u = Matrix::Identity(dim, dim);
  const size_t nc = from.size();
  std::vector<double> mid(nc);
  for (int s = 0; s < steps; ++s) {
    const double t = (s + 0.5) / steps;
    Matrix g = Matrix::Zero(dim, dim);
    bool any = false;
    for (size_t i = 0; i < nc; ++i) mid[i] = from[i] + (to[i] - from[i]) * t;
    for (size_t i = 0; i < nc; ++i) {
      const double d = (to[i] - from[i]) / steps;
      if (d == 0.0) continue;
      g += conn(mid, static_cast<int>(i)) * d;
      any = true;
    }
    if (any) u = expm_antihermitian(g, 1e-6) * u;
  }
  return u;
}

}  // namespace

Holonomy stokes_holonomy(const PlanarRegion& region, const ConnectionFn& conn,
                         const StokesOptions& options) {
  const int nc = region.chart.n_coords();
  if (static_cast<int>(region.frozen.size()) != nc)
    throw std::invalid_argument("stokes_holonomy: frozen coordinate count mismatch");
  if (region.axis_i == region.axis_j || region.axis_i >= nc || region.axis_j >= nc)
    throw std::invalid_argument("stokes_holonomy: bad plane axes");
  const int d = region.chart.block().dim();
  const int ai = region.axis_i, aj = region.axis_j;

  auto mk = [&](double u, double v) {
    std::vector<double> c = region.frozen;
    c[ai] = u;
    c[aj] = v;
    return c;
  };
  // F~ = d_sigma A_tau - d_tau A_sigma - [A_sigma, A_tau], five-point stencils
  const double h = options.h;
  auto dconn = [&](std::span<const double> at, int vary, int comp) {
    std::vector<double> c(at.begin(), at.end());
    auto eval = [&](double shift) {
      c[vary] = at[vary] + shift;
      return conn(c, comp);
    };
    return (-eval(2 * h) + 8.0 * eval(h) - 8.0 * eval(-h) + eval(-2 * h)) / (12.0 * h);
  };
  auto f_tilde = [&](std::span<const double> at) {
    const Matrix ds_at = dconn(at, ai, aj);
    const Matrix dt_as = dconn(at, aj, ai);
    const Matrix as = conn(at, ai);
    const Matrix at_ = conn(at, aj);
    return Matrix(ds_at - dt_as - (as * at_ - at_ * as));
  };

  Matrix w = Matrix::Identity(d, d);
  const double tau_lo = region.a_j, tau_hi = region.b_j;
  const int ntau = options.tau_slices;
  const auto gs = gauss_legendre_on(options.sigma_order, region.a_i, region.b_i);
  const double width = std::abs(region.b_i - region.a_i);
  // Wilson line up the tau edge accumulates slice by slice.
  Matrix t_vertical = Matrix::Identity(d, d);
  double tau_prev = tau_lo;
  for (int kt = 0; kt < ntau; ++kt) {
    const double t0 = tau_lo + (tau_hi - tau_lo) * kt / ntau;
    const double t1 = tau_lo + (tau_hi - tau_lo) * (kt + 1) / ntau;
    const double tm = 0.5 * (t0 + t1);
    t_vertical = wilson_line(conn, mk(region.a_i, tau_prev), mk(region.a_i, tm),
                             std::max(2, options.line_steps / ntau + 1), d) *
                 t_vertical;
    tau_prev = tm;
    // horizontal lines extend incrementally through the (sorted) GL nodes
    Matrix t_horizontal = Matrix::Identity(d, d);
    double s_prev = region.a_i;
    Matrix slab = Matrix::Zero(d, d);
    for (int is = 0; is < options.sigma_order; ++is) {
      const double s = gs.nodes[is];
      const int steps = std::max(
          2, static_cast<int>(std::ceil(options.line_steps * std::abs(s - s_prev) /
                                        std::max(width, 1e-300))));
      t_horizontal = wilson_line(conn, mk(s_prev, tm), mk(s, tm), steps, d) * t_horizontal;
      s_prev = s;
      const Matrix t_full = t_horizontal * t_vertical;
      slab += gs.weights[is] * (t_full.inverse() * f_tilde(mk(s, tm)) * t_full);
    }
    w = expm_antihermitian(slab * (t1 - t0), 1e-6) * w;
  }
  return {w, Route::Stokes, unitarity_defect(w)};
}

Holonomy stokes_holonomy(const PlanarRegion& region, ConnSource source,
                         const StokesOptions& options) {
  return stokes_holonomy(
      region, make_connection_fn(region.chart, source, frozen_calibration(region.chart.kind)),
      options);
}

Holonomy su2_rect_gate(Su2Rect kind, double angle) {
  const Matrix g = kind == Su2Rect::C1 ? sigma2_12() : sigma3_12();
  const Matrix u = expm_antihermitian(Complex(0, -2) * angle * g);
  return {u, Route::Surface, unitarity_defect(u)};
}

PlanarRegion su2_rect_region(Su2Rect kind, double angle, int cutoff) {
  PlanarRegion region;
  region.chart = ControlChart::su2(cutoff);
  region.axis_i = 0;                          // alpha
  region.axis_j = kind == Su2Rect::C1 ? 1 : 2;  // beta or gamma
  region.frozen = {0.0, 0.0, 0.0};
  region.a_i = 0.0;
  region.b_i = kPi;
  region.a_j = 0.0;
  region.b_j = angle;
  return region;
}

namespace {
void require_plane(const LoopPath& loop, std::initializer_list<int> allowed_moving) {
  if (loop.vertices.empty()) throw std::invalid_argument("loop has no vertices");
  const auto& base = loop.vertices.front();
  for (const auto& v : loop.vertices)
    for (size_t i = 0; i < v.size(); ++i) {
      bool can_move = false;
      for (int a : allowed_moving) can_move = can_move || static_cast<int>(i) == a;
      if (!can_move && std::abs(v[i] - base[i]) > 1e-12)
        throw std::invalid_argument("loop leaves the required coordinate plane");
    }
}
}  // namespace

double berry_phase_squeeze(const LoopPath& loop, int level) {
  if (level != 0 && level != 1)
    throw std::invalid_argument("berry_phase_squeeze: level must be 0 or 1");
  if (loop.chart.kind != ChartKind::SingleModeDS)
    throw std::invalid_argument("berry_phase_squeeze: single-mode chart required");
  if (!loop_is_closed(loop)) throw std::invalid_argument("berry_phase_squeeze: loop not closed");
  require_plane(loop, {2, 3});  // (r1, theta1)
  // phi_n = ((2n+1)/4) \oint (cosh 4 r1 - 1) d theta1, per-segment quadrature
  const auto& rule = gauss_legendre(16);
  double integral = 0;
  for (size_t e = 0; e + 1 < loop.vertices.size(); ++e) {
    const double r_a = loop.vertices[e][2], r_b = loop.vertices[e + 1][2];
    const double t_a = loop.vertices[e][3], t_b = loop.vertices[e + 1][3];
    const double dt = t_b - t_a;
    if (dt == 0.0) continue;
    for (size_t q = 0; q < rule.nodes.size(); ++q) {
      const double s = 0.5 * (rule.nodes[q] + 1.0);
      const double r = r_a + (r_b - r_a) * s;
      integral += 0.5 * rule.weights[q] * (std::cosh(4 * r) - 1.0) * dt;
    }
  }
  return (2.0 * level + 1.0) / 4.0 * integral;
}

double berry_phase_squeeze_dr(const LoopPath& loop) {
  if (loop.chart.kind != ChartKind::SingleModeDS)
    throw std::invalid_argument("berry_phase_squeeze_dr: single-mode chart required");
  const auto& rule = gauss_legendre(16);
  double integral = 0;
  for (size_t e = 0; e + 1 < loop.vertices.size(); ++e) {
    const double r_a = loop.vertices[e][2], r_b = loop.vertices[e + 1][2];
    const double dr = r_b - r_a;
    if (dr == 0.0) continue;
    for (size_t q = 0; q < rule.nodes.size(); ++q) {
      const double s = 0.5 * (rule.nodes[q] + 1.0);
      const double r = r_a + (r_b - r_a) * s;
      integral += 0.5 * rule.weights[q] * (std::cosh(4 * r) - 1.0) * dr;
    }
  }
  return integral / 4.0;  // n = 0 normalization
}

std::array<double, 2> berry_phase_displace(const LoopPath& loop, const ConnectionFn& conn) {
  if (loop.chart.kind != ChartKind::SingleModeDS)
    throw std::invalid_argument("berry_phase_displace: single-mode chart required");
  if (!loop_is_closed(loop)) throw std::invalid_argument("berry_phase_displace: loop not closed");
  require_plane(loop, {0, 1});  // (x, y); r1 frozen
  if (std::abs(loop.vertices.front()[2]) > 1e-12)
    throw std::invalid_argument("berry_phase_displace: r1 must be frozen at 0");
  const Holonomy h = path_ordered_holonomy(loop, conn);
  return {std::arg(h.u(0, 0)), std::arg(h.u(1, 1))};
}

std::array<double, 2> berry_phase_displace(const LoopPath& loop) {
  return berry_phase_displace(
      loop, make_connection_fn(loop.chart, ConnSource::Analytic,
                               frozen_calibration(loop.chart.kind)));
}

double loop_integral_ydx_minus_xdy(const LoopPath& loop) {
  // exact on straight segments: int (y dx - x dy) = (y_a x_b - ... ) midpoint
  double sum = 0;
  for (size_t e = 0; e + 1 < loop.vertices.size(); ++e) {
    const double xa = loop.vertices[e][0], ya = loop.vertices[e][1];
    const double xb = loop.vertices[e + 1][0], yb = loop.vertices[e + 1][1];
    // along the segment: x(t)=xa+(xb-xa)t, y similarly;
    // int y dx = (xb-xa) * (ya+yb)/2 ; int x dy = (yb-ya) * (xa+xb)/2
    sum += (xb - xa) * 0.5 * (ya + yb) - (yb - ya) * 0.5 * (xa + xb);
  }
  return sum;
}

}  // namespace holoq
