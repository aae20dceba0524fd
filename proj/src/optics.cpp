#include "holoq/optics.hpp"

#include <cmath>
#include <iostream>
#include <mutex>
#include <numbers>
#include <sstream>

namespace holoq {

namespace {
std::function<void(const std::string&)>& handler_ref() {
  static std::function<void(const std::string&)> h;
  return h;
}
std::mutex warn_mutex;
}  // namespace

void set_warning_handler(std::function<void(const std::string&)> handler) {
  std::lock_guard lock(warn_mutex);
  handler_ref() = std::move(handler);
}

void warn(const std::string& message) {
  std::lock_guard lock(warn_mutex);
  if (handler_ref())
    handler_ref()(message);
  else
    std::cerr << "[holoq] warning: " << message << "\n";
}

DisplaceParam DisplaceParam::polar(double r0, double theta0) {
  if (r0 < 0) throw std::invalid_argument("DisplaceParam: r0 must be >= 0");
  return {std::polar(r0, theta0)};
}

SqueezeParam SqueezeParam::from_mu(Complex mu) {
  return {std::abs(mu), std::arg(mu)};
}

double edge_population(const Operator& u) {
  const FockSpace& sp = u.space;
  const long dim = sp.total_dim();
  // code columns: every 0/1 occupation tuple
  double worst = 0;
  const long ncols = 1L << sp.n_modes;
  for (long mask = 0; mask < ncols; ++mask) {
    std::vector<int> occ(sp.n_modes);
    for (int l = 0; l < sp.n_modes; ++l) occ[l] = (mask >> l) & 1;
    const long col = sp.flat_index(occ);
    double pop = 0;
    for (long r = 0; r < dim; ++r) {
      const auto ro = sp.occupations(r);
      bool edge = false;
      for (int nu : ro) edge = edge || (nu == sp.cutoff - 1);
      if (edge) pop += std::norm(u.mat(r, col));
    }
    worst = std::max(worst, pop);
  }
  return worst;
}

namespace {
void guard(const Operator& op, const std::string& name, double magnitude, double limit) {
  if (magnitude > limit) {
    std::ostringstream os;
    os << name << ": parameter magnitude " << magnitude << " exceeds truncation guard " << limit
       << " at cutoff " << op.space.cutoff << "; code-column edge population "
       << edge_population(op);
    warn(os.str());
  }
}
}  // namespace

Operator displacer(const FockSpace& space, int mode, Complex lambda) {
  FockSpace single(1, space.cutoff);
  const Matrix a = annihilation_matrix(single, 0);
  const Matrix g = lambda * a.adjoint() - std::conj(lambda) * a;
  Operator op{space, embed_mode_unitary(space, mode, expm_antihermitian(g))};
  guard(op, "displacer", std::abs(lambda), space.cutoff / 4.0);
  return op;
}

Operator squeezer(const FockSpace& space, int mode, Complex mu) {
  FockSpace single(1, space.cutoff);
  const Matrix a = annihilation_matrix(single, 0);
  const Matrix ad = a.adjoint();
  const Matrix g = mu * ad * ad - std::conj(mu) * a * a;
  Operator op{space, embed_mode_unitary(space, mode, expm_antihermitian(g))};
  guard(op, "squeezer", std::abs(mu), 2.0);
  return op;
}

std::vector<long> total_number_grading(const FockSpace& space, int mode1, int mode2) {
  const long dim = space.total_dim();
  std::vector<long> g(dim);
  for (long k = 0; k < dim; ++k) {
    const auto occ = space.occupations(k);
    g[k] = occ[mode1] + occ[mode2];
  }
  return g;
}

std::vector<long> number_difference_grading(const FockSpace& space, int mode1, int mode2) {
  const long dim = space.total_dim();
  std::vector<long> g(dim);
  for (long k = 0; k < dim; ++k) {
    const auto occ = space.occupations(k);
    g[k] = occ[mode1] - occ[mode2];
  }
  return g;
}

Operator two_mode_squeezer(const FockSpace& space, int mode1, int mode2, Complex zeta) {
  if (mode1 == mode2) throw std::invalid_argument("two_mode_squeezer: modes must differ");
  const Matrix a1 = annihilation_matrix(space, mode1);
  const Matrix a2 = annihilation_matrix(space, mode2);
  const Matrix g = zeta * a1.adjoint() * a2.adjoint() - std::conj(zeta) * a1 * a2;
  // zeta a1^dag a2^dag shifts n1 - n2 by zero: exponentiate per difference sector
  const auto grading = number_difference_grading(space, mode1, mode2);
  Operator op{space, expm_antihermitian_graded(g, grading)};
  guard(op, "two_mode_squeezer", std::abs(zeta), 2.0);
  return op;
}

Operator two_mode_displacer(const FockSpace& space, int mode1, int mode2, Complex xi) {
  if (mode1 == mode2) throw std::invalid_argument("two_mode_displacer: modes must differ");
  const Matrix a1 = annihilation_matrix(space, mode1);
  const Matrix a2 = annihilation_matrix(space, mode2);
  const Matrix g = xi * a1.adjoint() * a2 - std::conj(xi) * a1 * a2.adjoint();
  const auto grading = total_number_grading(space, mode1, mode2);
  return {space, expm_antihermitian_graded(g, grading)};
}

Su2Generators su2_generators(const FockSpace& space, int mode1, int mode2) {
  if (mode1 == mode2) throw std::invalid_argument("su2_generators: modes must differ");
  const Matrix a1 = annihilation_matrix(space, mode1);
  const Matrix a2 = annihilation_matrix(space, mode2);
  const Matrix ad1 = a1.adjoint(), ad2 = a2.adjoint();
  Su2Generators g;
  g.jx = 0.5 * (ad1 * a2 + ad2 * a1);
  g.jy = Complex(0, -0.5) * (ad1 * a2 - ad2 * a1);
  g.jz = 0.5 * (ad1 * a1 - ad2 * a2);
  g.n = ad1 * a1 + ad2 * a2;
  return g;
}

Operator su2_unitary(const FockSpace& space, int mode1, int mode2, const SU2Angles& angles) {
  const auto g = su2_generators(space, mode1, mode2);
  const auto grading = total_number_grading(space, mode1, mode2);
  const Complex i(0, 1);
  const Matrix ux = expm_antihermitian_graded(i * angles.alpha * g.jx, grading);
  const Matrix uy = expm_antihermitian_graded(i * angles.beta * g.jy, grading);
  const Matrix uz = expm_antihermitian_graded(i * angles.gamma * g.jz, grading);
  return {space, ux * uy * uz};
}

Operator kerr_hamiltonian(const FockSpace& space, const KerrConfig& config) {
  // X = 0 is admitted as the free-evolution limit used by the kick tests
  if (config.coupling < 0) throw std::invalid_argument("kerr_hamiltonian: coupling must be >= 0");
  const long dim = space.total_dim();
  Matrix h = Matrix::Zero(dim, dim);
  for (long k = 0; k < dim; ++k) {
    double e = 0;
    for (int nu : space.occupations(k)) e += static_cast<double>(nu) * (nu - 1);
    h(k, k) = config.coupling * e;
  }
  return {space, h};
}

Operator kerr_evolution(const FockSpace& space, const KerrConfig& config, double dt) {
  Operator h = kerr_hamiltonian(space, config);
  const long dim = space.total_dim();
  Matrix u = Matrix::Zero(dim, dim);
  for (long k = 0; k < dim; ++k) u(k, k) = std::exp(Complex(0, -h.mat(k, k).real() * dt));
  return {space, u};
}

std::vector<double> degenerate_lattice_points(const KerrConfig& config, int k_max) {
  if (!config.omega) throw std::invalid_argument("degenerate_lattice_points: omega unset");
  std::vector<double> xs;
  xs.reserve(k_max + 1);
  for (int k = 0; k <= k_max; ++k)
    xs.push_back(2.0 * std::numbers::pi * k / *config.omega);
  return xs;
}

}  // namespace holoq
