#include "holoq/charts.hpp"

#include <doctest.h>

#include <numbers>

using namespace holoq;

namespace {
constexpr double kPi = std::numbers::pi;

Matrix sigma1_2x2() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
Matrix sigma2_2x2() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
}  // namespace

TEST_CASE("control unitaries at chart origins") {
  for (auto chart : {ControlChart::single_mode_ds(16), ControlChart::two_mode_nm(8),
                     ControlChart::su2(8)}) {
    ControlPoint origin{chart, std::vector<double>(chart.n_coords(), 0.0)};
    const Operator u = control_unitary(origin);
    CHECK(max_abs(u.mat - Matrix::Identity(u.mat.rows(), u.mat.cols())) < 1e-13);
  }
}

TEST_CASE("single-mode chart factorizes when r1 = 0") {
  const auto chart = ControlChart::single_mode_ds(24);
  ControlPoint p{chart, {0.4, -0.2, 0.0, 0.0}};
  const Matrix u = control_unitary(p).mat;
  const Matrix d = displacer(chart.space(), 0, Complex(0.4, -0.2)).mat;
  CHECK(max_abs(u - d) < 1e-13);
}

TEST_CASE("su2 chart reduces to exp(i alpha Jx)") {
  const auto chart = ControlChart::su2(8);
  ControlPoint p{chart, {0.9, 0.0, 0.0}};
  const Matrix u = control_unitary(p).mat;
  const auto g = su2_generators(chart.space(), 0, 1);
  const Matrix expect = expm_antihermitian(Complex(0, 0.9) * g.jx);
  CHECK(max_abs(u - expect) < 1e-12);
}

TEST_CASE("connection components at special points") {
  const auto chart = ControlChart::single_mode_ds(32);

  SUBCASE("A_theta1 vanishes at r1 = 0") {
    ControlPoint origin{chart, {0.0, 0.0, 0.0, 0.0}};
    const auto s = connection_numeric(origin, Comp::Theta1);
    CHECK(max_abs(s.a) < 1e-9);
  }
  SUBCASE("A_r1 is the zero matrix") {
    ControlPoint p{chart, {0.2, 0.0, 0.3, 0.0}};
    const auto s = connection_numeric(p, Comp::R1);
    CHECK(max_abs(s.a) < 1e-6);
    CHECK(max_abs(connection_analytic(p, Comp::R1)) == 0.0);
  }
  SUBCASE("finite differences are second order in h") {
    ControlPoint p{chart, {0.5, -0.3, 0.15, 0.8}};
    NumericOptions o1;
    o1.h = 2e-4;
    NumericOptions o2;
    o2.h = 1e-4;
    const Matrix ref = connection_analytic(p, Comp::X);
    const double e1 = max_abs(connection_numeric(p, Comp::X, o1).a - ref);
    const double e2 = max_abs(connection_numeric(p, Comp::X, o2).a - ref);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15));
  }
}

TEST_CASE("analytic closed forms at quoted points") {
  const auto chart1 = ControlChart::single_mode_ds(32);
  SUBCASE("A_theta1 at r1 = 0.5") {
    ControlPoint p{chart1, {0.0, 0.0, 0.5, 0.0}};
    const Matrix a = connection_analytic(p, Comp::Theta1);
    const double f = 0.25 * (std::cosh(2.0) - 1.0);
    CHECK(std::abs(a(0, 0) - Complex(0, f)) < 1e-14);
    CHECK(std::abs(a(1, 1) - Complex(0, 3 * f)) < 1e-14);
    CHECK(std::abs(a(0, 1)) == 0.0);
  }
  SUBCASE("A_r3 at r2 = 0") {
    const auto chart2 = ControlChart::two_mode_nm(16);
    ControlPoint p{chart2, {0.0, 0.0, 0.7, 0.0}};
    const Matrix a = connection_analytic(p, Comp::R3);
    CHECK(std::abs(a(1, 2) + 1.0) < 1e-14);  // (2 cosh^2(0) - 1) = 1
    CHECK(std::abs(a(2, 1) - 1.0) < 1e-14);
    CHECK(std::abs(a(0, 3)) == 0.0);
  }
  SUBCASE("SU(2) A_gamma") {
    const auto chart3 = ControlChart::su2(16);
    ControlPoint p{chart3, {0.3, 0.8, -0.4}};
    const Matrix a = connection_analytic(p, Comp::Gamma);
    Matrix expect = Matrix::Zero(4, 4);
    expect(1, 1) = Complex(0, -0.5);
    expect(2, 2) = Complex(0, 0.5);
    CHECK(max_abs(a - expect) < 1e-15);
  }
  SUBCASE("theta2 has no closed form") {
    const auto chart2 = ControlChart::two_mode_nm(16);
    ControlPoint p{chart2, {0.2, 0.0, 0.1, 0.0}};
    CHECK_THROWS_AS(connection_analytic(p, Comp::Theta2), std::invalid_argument);
  }
}

TEST_CASE("numeric matches calibrated analytic on seeded probes") {
  for (auto chart : {ControlChart::single_mode_ds(32), ControlChart::two_mode_nm(16),
                     ControlChart::su2(16)}) {
    const auto points = seeded_probe_points(chart, 5, 42);
    const auto cal = frozen_calibration(chart.kind);
    for (const auto& p : points)
      for (Comp c : chart.analytic_comps()) {
        if ((c == Comp::R0 || c == Comp::Theta0) &&
            std::hypot(p.coords[0], p.coords[1]) < 0.05)
          continue;
        const auto num = connection_numeric(p, c);
        const Matrix ana = connection_analytic(p, c, cal);
        CAPTURE(comp_name(c));
        CHECK(max_abs(num.a - ana) < 1e-5);
        CHECK(num.hermiticity_defect < 1e-6);
      }
  }
}

TEST_CASE("calibration fit recovers the frozen sign map") {
  SUBCASE("single-mode chart needs the theta1 flip") {
    const auto fit = calibrate_chart(ControlChart::single_mode_ds(32), 0);
    CHECK(fit.residual < 1e-5);
    CHECK(fit.calibration.coord_signs[3] == -1.0);
    CHECK(fit.calibration.coord_signs[0] == 1.0);
    CHECK(fit.calibration.coord_signs[1] == 1.0);
    CHECK_FALSE(fit.calibration.transpose);
    CHECK(fit.runner_up_residual > 100 * fit.residual);
  }
  SUBCASE("two-mode and su2 charts are identity") {
    for (auto chart : {ControlChart::two_mode_nm(16), ControlChart::su2(16)}) {
      const auto fit = calibrate_chart(chart, 0);
      CHECK(fit.residual < 1e-5);
      CHECK_FALSE(fit.calibration.transpose);
    }
  }
}

TEST_CASE("polar components") {
  const auto chart = ControlChart::single_mode_ds(32);
  ControlPoint p{chart, {0.5, 0.4, 0.15, 0.6}};
  const auto cal = frozen_calibration(chart.kind);

  SUBCASE("chain rule A_x = cos A_r0 - sin/r0 A_theta0") {
    const double r0 = std::hypot(0.5, 0.4), t0 = std::atan2(0.4, 0.5);
    const Matrix ax = connection_analytic(p, Comp::X, cal);
    const Matrix ar0 = connection_analytic(p, Comp::R0, cal);
    const Matrix at0 = connection_analytic(p, Comp::Theta0, cal);
    CHECK(max_abs(ax - (std::cos(t0) * ar0 - std::sin(t0) / r0 * at0)) < 1e-12);

    const Matrix ay = connection_analytic(p, Comp::Y, cal);
    CHECK(max_abs(ay - (std::sin(t0) * ar0 + std::cos(t0) / r0 * at0)) < 1e-12);
  }
  SUBCASE("numeric polar agrees with analytic") {
    CHECK(max_abs(connection_numeric(p, Comp::R0).a -
                  connection_analytic(p, Comp::R0, cal)) < 1e-5);
    CHECK(max_abs(connection_numeric(p, Comp::Theta0).a -
                  connection_analytic(p, Comp::Theta0, cal)) < 1e-5);
  }
  SUBCASE("rejected at the coordinate singularity") {
    ControlPoint origin{chart, {0.0, 0.0, 0.1, 0.0}};
    CHECK_THROWS_AS(connection_numeric(origin, Comp::R0), std::invalid_argument);
    CHECK_THROWS_AS(connection_analytic(origin, Comp::Theta0, cal), std::invalid_argument);
  }
}

TEST_CASE("field strengths reproduce the closed forms") {
  const auto chart1 = ControlChart::single_mode_ds(32);
  const auto chart2 = ControlChart::two_mode_nm(16);
  const auto cal1 = frozen_calibration(chart1.kind);
  const auto cal2 = frozen_calibration(chart2.kind);

  SUBCASE("F_{x r1} = -2i sigma2 e^{-2 r1} at theta1 = 0") {
    ControlPoint p{chart1, {0.3, -0.1, 0.25, 0.0}};
    const Matrix f = field_strength(p, Comp::X, Comp::R1, ConnSource::Analytic, cal1);
    const Matrix expect = Complex(0, -2) * std::exp(-0.5) * sigma2_2x2();
    CHECK(max_abs(f - expect) < 1e-6);
  }
  SUBCASE("F_{y r1} = -2i sigma1 e^{2 r1} at theta1 = 0") {
    ControlPoint p{chart1, {0.3, -0.1, 0.25, 0.0}};
    const Matrix f = field_strength(p, Comp::Y, Comp::R1, ConnSource::Analytic, cal1);
    const Matrix expect = Complex(0, -2) * std::exp(0.5) * sigma1_2x2();
    CHECK(max_abs(f - expect) < 1e-6);
  }
  SUBCASE("F_{r1 theta1} = -i s3_hat sinh(4 r1)") {
    ControlPoint p{chart1, {0.0, 0.0, 0.3, 0.0}};
    const Matrix f = field_strength(p, Comp::R1, Comp::Theta1, ConnSource::Analytic, cal1);
    Matrix expect = Matrix::Zero(2, 2);
    expect(0, 0) = Complex(0, std::sinh(1.2));
    expect(1, 1) = Complex(0, 3 * std::sinh(1.2));
    CHECK(max_abs(f - expect) < 1e-6);
  }
  SUBCASE("F_{r2 r3} at theta2 = theta3 = 0 and at theta3 = 3 pi / 2") {
    ControlPoint p{chart2, {0.4, 0.0, 0.5, 0.0}};
    const Matrix f = field_strength(p, Comp::R2, Comp::R3, ConnSource::Analytic, cal2);
    Matrix expect = Matrix::Zero(4, 4);
    expect(1, 2) = -2.0 * std::sinh(0.8);
    expect(2, 1) = 2.0 * std::sinh(0.8);  // -2i sigma2_12 sinh(2 r2)
    CHECK(max_abs(f - expect) < 1e-6);

    ControlPoint p2{chart2, {0.4, 0.0, 0.5, 3 * kPi / 2}};
    const Matrix f2 = field_strength(p2, Comp::R2, Comp::R3, ConnSource::Analytic, cal2);
    Matrix expect2 = Matrix::Zero(4, 4);
    expect2(1, 2) = Complex(0, -2.0 * std::sinh(0.8));
    expect2(2, 1) = Complex(0, -2.0 * std::sinh(0.8));  // -2i sigma1_12 sinh(2 r2)
    CHECK(max_abs(f2 - expect2) < 1e-6);
  }
  SUBCASE("antisymmetry and F_ii = 0") {
    ControlPoint p{chart1, {0.2, 0.1, 0.1, 0.4}};
    const Matrix fxy = field_strength(p, Comp::X, Comp::Y, ConnSource::Analytic, cal1);
    const Matrix fyx = field_strength(p, Comp::Y, Comp::X, ConnSource::Analytic, cal1);
    CHECK(max_abs(fxy + fyx) < 1e-8);
    CHECK(max_abs(field_strength(p, Comp::X, Comp::X, ConnSource::Analytic, cal1)) == 0.0);
  }
  SUBCASE("numeric-source field strength agrees with the analytic source") {
    ControlPoint p{chart1, {0.3, -0.1, 0.1, 0.0}};
    const Matrix fa = field_strength(p, Comp::X, Comp::R1, ConnSource::Analytic, cal1);
    const Matrix fn = field_strength(p, Comp::X, Comp::R1, ConnSource::Numeric, cal1);
    CHECK(max_abs(fa - fn) < 1e-4);
  }
}

TEST_CASE("commutator norms on the five planes") {
  const auto chart1 = ControlChart::single_mode_ds(32);
  const auto chart2 = ControlChart::two_mode_nm(16);
  const auto chart3 = ControlChart::su2(16);
  const auto cal1 = frozen_calibration(chart1.kind);
  const auto cal2 = frozen_calibration(chart2.kind);
  const auto cal3 = frozen_calibration(chart3.kind);

  ControlPoint p1{chart1, {0.4, -0.2, 0.15, 0.0}};
  CHECK(commutator_norm(p1, Comp::X, Comp::R1, ConnSource::Analytic, cal1) < 1e-8);
  CHECK(commutator_norm(p1, Comp::Y, Comp::R1, ConnSource::Analytic, cal1) < 1e-8);
  CHECK(commutator_norm(p1, Comp::R1, Comp::Theta1, ConnSource::Analytic, cal1) < 1e-8);

  ControlPoint p2{chart2, {0.3, 0.0, 0.6, 0.0}};
  CHECK(commutator_norm(p2, Comp::R2, Comp::R3, ConnSource::Analytic, cal2) < 1e-8);
  ControlPoint p2b{chart2, {0.3, 0.0, 0.6, 3 * kPi / 2}};
  CHECK(commutator_norm(p2b, Comp::R2, Comp::R3, ConnSource::Analytic, cal2) < 1e-8);

  // the su2 components do not commute at generic points
  ControlPoint p3{chart3, {0.5, 0.7, 0.3}};
  CHECK(commutator_norm(p3, Comp::Alpha, Comp::Beta, ConnSource::Analytic, cal3) > 0.01);
}

TEST_CASE("truncation-convergence guard") {
  // r1 = 0.6 at cutoff 16 is far past the stable range: doubling the cutoff
  // moves the entries by much more than the tolerance
  const auto chart = ControlChart::single_mode_ds(16);
  ControlPoint p{chart, {0.2, 0.0, 0.6, 0.0}};
  NumericOptions opt;
  opt.check_truncation = true;
  CHECK_THROWS_AS(connection_numeric(p, Comp::X, opt), convergence_error);

  // and a stable point passes
  ControlPoint stable{chart, {0.2, 0.0, 0.05, 0.0}};
  CHECK_NOTHROW(connection_numeric(stable, Comp::X, opt));
}

TEST_CASE("radial coordinates reject negative values") {
  const auto chart = ControlChart::two_mode_nm(8);
  ControlPoint p{chart, {-0.1, 0.0, 0.2, 0.0}};
  CHECK_THROWS_AS(control_unitary(p), std::invalid_argument);
}
