#pragma once
// Quantum-optical control unitaries: displacer, squeezer, two-mode
// squeezer/displacer, SU(2) interferometer generators, Kerr Hamiltonian.

#include "holoq/fock.hpp"

#include <functional>
#include <optional>

namespace holoq {

/// Replace the truncation-guard warning sink (nullptr restores stderr).
void set_warning_handler(std::function<void(const std::string&)> handler);
void warn(const std::string& message);

/// Displacement amplitude lambda = x + i y = r0 e^{i theta0}.
struct DisplaceParam {
  Complex lambda;

  static DisplaceParam cartesian(double x, double y) { return {{x, y}}; }
  static DisplaceParam polar(double r0, double theta0);

  double x() const { return lambda.real(); }
  double y() const { return lambda.imag(); }
  double r0() const { return std::abs(lambda); }
  double theta0() const { return std::arg(lambda); }
};

/// Squeeze amplitude mu = r1 e^{i theta1}, r1 >= 0, theta1 in (-pi, pi].
struct SqueezeParam {
  double r1;
  double theta1;

  static SqueezeParam from_mu(Complex mu);
  Complex mu() const { return std::polar(r1, theta1); }
};

/// Two-mode squeeze/displace amplitudes zeta = r2 e^{i theta2},
/// xi = r3 e^{i theta3}.
struct TwoModeParams {
  Complex zeta;
  Complex xi;

  double r2() const { return std::abs(zeta); }
  double theta2() const { return std::arg(zeta); }
  double r3() const { return std::abs(xi); }
  double theta3() const { return std::arg(xi); }
};

struct SU2Angles {
  double alpha = 0;
  double beta = 0;
  double gamma = 0;
};

/// Kerr coupling X (hbar = 1); omega only feeds the lattice-point utility.
struct KerrConfig {
  double coupling = 1.0;
  std::optional<double> omega;
};

/// D(lambda) = exp(lambda a^dag - conj(lambda) a). Warns when |lambda|
/// exceeds cutoff/4 (truncation guard).
Operator displacer(const FockSpace& space, int mode, Complex lambda);

/// S(mu) = exp(mu a^dag^2 - conj(mu) a^2). Warns when |mu| exceeds 2.
Operator squeezer(const FockSpace& space, int mode, Complex mu);

/// M(zeta) = exp(zeta a1^dag a2^dag - conj(zeta) a1 a2).
Operator two_mode_squeezer(const FockSpace& space, int mode1, int mode2, Complex zeta);

/// N(xi) = exp(xi a1^dag a2 - conj(xi) a1 a2^dag); conserves n1 + n2.
Operator two_mode_displacer(const FockSpace& space, int mode1, int mode2, Complex xi);

struct Su2Generators {
  Matrix jx, jy, jz, n;
};
Su2Generators su2_generators(const FockSpace& space, int mode1, int mode2);

/// U = exp(i alpha Jx) exp(i beta Jy) exp(i gamma Jz).
Operator su2_unitary(const FockSpace& space, int mode1, int mode2, const SU2Angles& angles);

/// H = X sum_l n_l (n_l - 1); diagonal, annihilates every 0/1 occupation.
Operator kerr_hamiltonian(const FockSpace& space, const KerrConfig& config);
Operator kerr_evolution(const FockSpace& space, const KerrConfig& config, double dt);

/// x_k = 2 pi k / omega (c = 1), where the free-field phase is trivial.
std::vector<double> degenerate_lattice_points(const KerrConfig& config, int k_max);

/// Weight at the top Fock level of any mode, maximized over the columns of
/// the 0/1-occupation code states. Estimates truncation-edge population.
double edge_population(const Operator& u);

/// Grading vector n1 + n2 (or n1 - n2) over the flat basis, for graded expm.
std::vector<long> total_number_grading(const FockSpace& space, int mode1, int mode2);
std::vector<long> number_difference_grading(const FockSpace& space, int mode1, int mode2);

}  // namespace holoq
