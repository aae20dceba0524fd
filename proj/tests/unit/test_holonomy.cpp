#include "holoq/holonomy.hpp"

#include <doctest.h>

#include <numbers>

using namespace holoq;

namespace {
constexpr double kPi = std::numbers::pi;

PlanarRegion make_region(const ControlChart& chart, int ai, int aj, double bi, double bj,
                         std::vector<double> frozen) {
  PlanarRegion r;
  r.chart = chart;
  r.axis_i = ai;
  r.axis_j = aj;
  r.frozen = std::move(frozen);
  r.a_i = r.frozen[ai];
  r.b_i = bi;
  r.a_j = r.frozen[aj];
  r.b_j = bj;
  return r;
}
}  // namespace

TEST_CASE("degenerate loop gives the identity") {
  LoopPath loop;
  loop.chart = ControlChart::single_mode_ds(16);
  loop.vertices = {{0.1, 0.2, 0.05, 0.0}, {0.1, 0.2, 0.05, 0.0}};
  const Holonomy h = path_ordered_holonomy(loop);
  CHECK(max_abs(h.u - Matrix::Identity(2, 2)) < 1e-14);
}

TEST_CASE("non-closed loops are rejected; angle closure is modular") {
  LoopPath open;
  open.chart = ControlChart::single_mode_ds(16);
  open.vertices = {{0, 0, 0, 0}, {0.5, 0, 0, 0}};
  CHECK_THROWS_AS(path_ordered_holonomy(open), std::invalid_argument);

  LoopPath periodic;
  periodic.chart = ControlChart::single_mode_ds(16);
  periodic.vertices = {{0, 0, 0.2, 0}, {0, 0, 0.2, 2 * kPi}};
  CHECK(loop_is_closed(periodic));
}

TEST_CASE("surface quadrature matches the closed forms") {
  const auto chart1 = ControlChart::single_mode_ds(32);
  const auto chart2 = ControlChart::two_mode_nm(16);

  SUBCASE("Sigma_I strip converges to 1 as the r1 extent grows") {
    auto region = make_region(chart1, 0, 2, 1.0, 20.0, {0, 0, 0, 0});
    region.quad_order = 48;
    CHECK(surface_sigma(region, SigmaKind::I) == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("Sigma_III over r1 in [0, 0.5], theta1 in [0, 2 pi]") {
    auto region = make_region(chart1, 2, 3, 0.5, 2 * kPi, {0, 0, 0, 0});
    const double expect = 2 * kPi * (std::cosh(2.0) - 1.0) / 4.0;
    CHECK(surface_sigma(region, SigmaKind::III) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(sigma_closed_form(region, SigmaKind::III) == doctest::Approx(expect).epsilon(1e-14));
  }
  SUBCASE("Sigma_IV over r2 in [0, 0.3], r3 in [0, 1]") {
    auto region = make_region(chart2, 0, 2, 0.3, 1.0, {0, 0, 0, 0});
    const double expect = std::cosh(0.6) - 1.0;
    CHECK(surface_sigma(region, SigmaKind::IV) == doctest::Approx(expect).epsilon(1e-12));
  }
  SUBCASE("plane/constraint mismatches are rejected") {
    auto wrong_plane = make_region(chart1, 1, 2, 1.0, 0.5, {0, 0, 0, 0});
    CHECK_THROWS_AS(surface_sigma(wrong_plane, SigmaKind::I), std::invalid_argument);
    auto bad_angle = make_region(chart2, 0, 2, 0.3, 1.0, {0, 0, 0, 0.3});
    CHECK_THROWS_AS(surface_sigma(bad_angle, SigmaKind::V), std::invalid_argument);
  }
}

TEST_CASE("holonomy_from_sigma") {
  CHECK(max_abs(holonomy_from_sigma(SigmaKind::I, 0.0).u - Matrix::Identity(2, 2)) < 1e-15);

  // which = IV, Sigma = pi/2: a pi rotation in the {|01>, |10>} block
  const Holonomy h = holonomy_from_sigma(SigmaKind::IV, kPi / 2);
  Matrix expect = Matrix::Identity(4, 4);
  expect(1, 1) = expect(2, 2) = 0;
  expect(1, 2) = -1;
  expect(2, 1) = 1;  // exp(-i (pi/2) sigma2_12)
  CHECK(max_abs(h.u - expect) < 1e-14);
  CHECK(h.unitarity_defect < 1e-14);
}

TEST_CASE("route concordance: surface equals path-ordered on every plane") {
  const auto chart1 = ControlChart::single_mode_ds(32);
  const auto chart2 = ControlChart::two_mode_nm(16);
  struct Case {
    SigmaKind which;
    PlanarRegion region;
  };
  const std::vector<Case> cases{
      {SigmaKind::I, make_region(chart1, 0, 2, 0.8, 0.4, {0, -0.3, 0, 0})},
      {SigmaKind::II, make_region(chart1, 1, 2, 0.5, 0.3, {0.2, 0, 0, 0})},
      {SigmaKind::III, make_region(chart1, 2, 3, 0.4, 1.2, {0.1, 0.2, 0, 0})},
      {SigmaKind::IV, make_region(chart2, 0, 2, 0.4, 0.9, {0, 0, 0, 0})},
      {SigmaKind::V, make_region(chart2, 0, 2, 0.4, 0.9, {0, 0, 0, 3 * kPi / 2})},
  };
  for (const auto& c : cases) {
    const double sig = surface_sigma(c.region, c.which);
    CHECK(std::abs(sig - sigma_closed_form(c.region, c.which)) < 1e-12);
    const Holonomy s = holonomy_from_sigma(c.which, sig);
    const Holonomy p = path_ordered_holonomy(region_boundary(c.region, 300));
    CAPTURE(static_cast<int>(c.which));
    CHECK(max_abs(s.u - p.u) < 1e-5);
    CHECK(p.unitarity_defect < 1e-9);
  }
}

TEST_CASE("path-ordered holonomy self-converges under step halving") {
  const auto region =
      make_region(ControlChart::single_mode_ds(32), 0, 2, 1.0, 1.0, {0, 0, 0, 0});
  const Holonomy a = path_ordered_holonomy(region_boundary(region, 400));
  const Holonomy b = path_ordered_holonomy(region_boundary(region, 800));
  CHECK(max_abs(a.u - b.u) < 1e-6);
}

TEST_CASE("orientation reversal inverts the holonomy") {
  const auto region =
      make_region(ControlChart::su2(12), 0, 1, 1.3, 0.8, {0.2, 0.1, 0.4});
  LoopPath fwd = region_boundary(region, 250);
  LoopPath rev = fwd;
  std::reverse(rev.vertices.begin(), rev.vertices.end());
  const Matrix u = path_ordered_holonomy(fwd).u;
  const Matrix v = path_ordered_holonomy(rev).u;
  CHECK(max_abs(u * v - Matrix::Identity(4, 4)) < 1e-8);
}

TEST_CASE("loops sharing a base point compose") {
  const auto chart = ControlChart::su2(12);
  const auto r1 = make_region(chart, 0, 1, 1.0, 0.4, {0, 0, 0});
  const auto r2 = make_region(chart, 0, 1, 0.7, 0.9, {0, 0, 0});
  LoopPath l1 = region_boundary(r1, 300);
  LoopPath l2 = region_boundary(r2, 300);
  LoopPath joined = l1;
  joined.vertices.insert(joined.vertices.end(), l2.vertices.begin() + 1, l2.vertices.end());
  const Matrix lhs = path_ordered_holonomy(joined).u;
  const Matrix rhs = path_ordered_holonomy(l2).u * path_ordered_holonomy(l1).u;
  CHECK(max_abs(lhs - rhs) < 1e-6);
}

TEST_CASE("su2 rectangles: path-ordered vs closed form and stokes") {
  const double beta = 0.3;
  const auto c1 = su2_rect_region(Su2Rect::C1, beta, 12);
  const Holonomy p = path_ordered_holonomy(region_boundary(c1, 400));

  // counterclockwise traversal gives exp(+i 2 beta sigma2_12); the closed
  // form of su2_rect_gate corresponds to the reversed traversal
  const Matrix ccw = expm_antihermitian(Complex(0, 2 * beta) * sigma2_12());
  CHECK(max_abs(p.u - ccw) < 1e-6);
  CHECK(max_abs(su2_rect_gate(Su2Rect::C1, beta).u - Matrix(ccw.adjoint())) < 1e-12);

  SUBCASE("stokes route") {
    StokesOptions opt;
    opt.tau_slices = 96;
    const Holonomy w = stokes_holonomy(c1, ConnSource::Analytic, opt);
    CHECK(max_abs(w.u - p.u) < 1e-5);
    CHECK(w.unitarity_defect < 1e-9);
  }
  SUBCASE("C2 rectangle against the closed form") {
    const double gamma = 0.2;
    const auto c2 = su2_rect_region(Su2Rect::C2, gamma, 12);
    StokesOptions opt;
    opt.tau_slices = 96;
    const Holonomy w = stokes_holonomy(c2, ConnSource::Analytic, opt);
    const Matrix expect = expm_antihermitian(Complex(0, 2 * gamma) * sigma3_12());
    CHECK(max_abs(w.u - expect) < 1e-4);
  }
}

TEST_CASE("stokes equals path-ordered off the axes and on sigma planes") {
  SUBCASE("zero-area rectangle") {
    auto r = su2_rect_region(Su2Rect::C1, 0.0, 12);
    const Holonomy w = stokes_holonomy(r, ConnSource::Analytic);
    CHECK(max_abs(w.u - Matrix::Identity(4, 4)) < 1e-12);
  }
  SUBCASE("offset su2 rectangle") {
    auto r = make_region(ControlChart::su2(12), 0, 1, 1.7, 0.9, {0.4, 0.2, 0.0});
    StokesOptions opt;
    opt.tau_slices = 256;
    const Holonomy w = stokes_holonomy(r, ConnSource::Analytic, opt);
    const Holonomy p = path_ordered_holonomy(region_boundary(r, 400));
    CHECK(max_abs(w.u - p.u) < 1e-5);
  }
  SUBCASE("two-mode squeeze plane") {
    auto r = make_region(ControlChart::two_mode_nm(16), 0, 2, 0.4, 0.9, {0, 0, 0, 0});
    StokesOptions opt;
    opt.tau_slices = 64;
    const Holonomy w = stokes_holonomy(r, ConnSource::Analytic, opt);
    const Holonomy p = path_ordered_holonomy(region_boundary(r, 300));
    CHECK(max_abs(w.u - p.u) < 1e-5);
  }
}

TEST_CASE("squeeze-loop Berry phases") {
  const auto chart = ControlChart::single_mode_ds(32);
  SUBCASE("r1 = 0 loop carries no phase") {
    LoopPath loop;
    loop.chart = chart;
    loop.vertices = {{0, 0, 0, 0}, {0, 0, 0, 2 * kPi}};
    CHECK(berry_phase_squeeze(loop, 0) == 0.0);
  }
  SUBCASE("constant r1 = 0.4 circle") {
    LoopPath loop;
    loop.chart = chart;
    loop.vertices = {{0, 0, 0.4, 0}, {0, 0, 0.4, 2 * kPi}};
    loop.steps_per_edge = 2000;
    const double expect = 0.25 * (std::cosh(1.6) - 1.0) * 2 * kPi;
    const double phi0 = berry_phase_squeeze(loop, 0);
    const double phi1 = berry_phase_squeeze(loop, 1);
    CHECK(phi0 == doctest::Approx(expect).epsilon(1e-12));
    CHECK(phi1 / phi0 == doctest::Approx(3.0).epsilon(1e-12));

    // cross-check against the path-ordered diagonal phases
    const Holonomy h = path_ordered_holonomy(loop);
    CHECK(std::arg(h.u(0, 0)) ==
          doctest::Approx(std::remainder(expect, 2 * kPi)).epsilon(1e-8));

    // the differential printed in the text integrates to zero on closed loops
    CHECK(std::abs(berry_phase_squeeze_dr(loop)) < 1e-14);
  }
}

TEST_CASE("displacement-loop Berry phases") {
  const auto chart = ControlChart::single_mode_ds(32);
  auto square = [&](double eps) {
    LoopPath loop;
    loop.chart = chart;
    loop.vertices = {{0, 0, 0, 0}, {eps, 0, 0, 0}, {eps, eps, 0, 0}, {0, eps, 0, 0},
                     {0, 0, 0, 0}};
    loop.steps_per_edge = 60;
    return loop;
  };
  SUBCASE("zero-area loop") {
    LoopPath loop;
    loop.chart = chart;
    loop.vertices = {{0.3, 0.2, 0, 0}, {0.3, 0.2, 0, 0}};
    const auto phases = berry_phase_displace(loop);
    CHECK(phases[0] == 0.0);
    CHECK(phases[1] == 0.0);
  }
  SUBCASE("small-square area law: |0> carries 4*area, |1> none") {
    const double eps = 0.01;
    const auto phases = berry_phase_displace(square(eps));
    CHECK(std::abs(phases[0] - 4 * eps * eps) < 10 * eps * eps * eps);
    CHECK(std::abs(phases[1]) < 10 * eps * eps * eps);
    // the paper's line integral: mean phase = -oint(y dx - x dy) + O(eps^3)
    const double line = loop_integral_ydx_minus_xdy(square(eps));
    CHECK(line == doctest::Approx(-2 * eps * eps).epsilon(1e-10));
    CHECK(std::abs(0.5 * (phases[0] + phases[1]) + line) < 10 * eps * eps * eps);
  }
  SUBCASE("orientation flip negates the phases") {
    const double eps = 0.02;
    LoopPath fwd = square(eps);
    LoopPath rev = fwd;
    std::reverse(rev.vertices.begin(), rev.vertices.end());
    const auto a = berry_phase_displace(fwd);
    const auto b = berry_phase_displace(rev);
    CHECK(std::abs(a[0] + b[0]) < 1e-10);
    CHECK(std::abs(a[1] + b[1]) < 1e-10);
  }
  SUBCASE("the |0>/|1> phases differ on the unit circle") {
    LoopPath loop;
    loop.chart = chart;
    const int nv = 256;
    for (int k = 0; k <= nv; ++k) {
      const double t = 2 * kPi * k / nv;
      loop.vertices.push_back({std::cos(t), std::sin(t), 0, 0});
    }
    loop.steps_per_edge = 8;
    const auto phases = berry_phase_displace(loop);
    const double diff = std::abs(std::remainder(phases[1] - phases[0], 2 * kPi));
    CHECK(diff > 1e-3);
  }
}
