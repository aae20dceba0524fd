#include "holoq/gates.hpp"

#include <cmath>
#include <numbers>

namespace holoq {

SigmaKind axis_sigma_kind(Axis axis) {
  switch (axis) {
    case Axis::X: return SigmaKind::II;   // generator sigma1
    case Axis::Y: return SigmaKind::I;    // generator sigma2
    case Axis::Z: return SigmaKind::III;  // generator s3_hat
  }
  throw std::logic_error("axis_sigma_kind: bad enum");
}

PlanarRegion plan_rotation(Axis axis, double angle, int cutoff) {
  PlanarRegion region;
  region.chart = ControlChart::single_mode_ds(cutoff);
  region.frozen = {0, 0, 0, 0};
  switch (axis) {
    case Axis::X:  // Sigma_II over y in [0, y1], r1 in [0, 1]: y1 (e^2 - 1)
      region.axis_i = 1;
      region.axis_j = 2;
      region.b_i = angle / (std::exp(2.0) - 1.0);
      region.b_j = 1.0;
      break;
    case Axis::Y:  // Sigma_I over x in [0, x1], r1 in [0, 1]: x1 (1 - e^-2)
      region.axis_i = 0;
      region.axis_j = 2;
      region.b_i = angle / (1.0 - std::exp(-2.0));
      region.b_j = 1.0;
      break;
    case Axis::Z:  // Sigma_III over r1 in [0, 1], theta1 in [0, t]: t (cosh 4 - 1)/4
      region.axis_i = 2;
      region.axis_j = 3;
      region.b_i = 1.0;
      region.b_j = 4.0 * angle / (std::cosh(4.0) - 1.0);
      break;
  }
  return region;
}

Matrix u_swap() {
  Matrix s = Matrix::Zero(4, 4);
  s(0, 0) = s(3, 3) = 1;
  s(1, 2) = s(2, 1) = 1;
  return s;
}

double distance_up_to_phase(const Matrix& a, const Matrix& b) {
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(b(r, c)) < 1e-300) return max_abs(a - b);
  Complex phase = a(r, c) / b(r, c);
  const double mag = std::abs(phase);
  if (mag < 1e-300) return max_abs(a - b);
  phase /= mag;
  return max_abs(a - phase * b);
}

namespace {

// block states {|01>, |10>} on a mode pair, as local occupation tuples
const std::vector<std::vector<int>>& dual_rail_states() {
  static const std::vector<std::vector<int>> s{{0, 1}, {1, 0}};
  return s;
}

Matrix embed_step_unitary(const FockSpace& space, const QubitEncoding& enc,
                          const Matrix& block_u) {
  if (std::holds_alternative<SingleModeEncoding>(enc)) {
    const auto& e = std::get<SingleModeEncoding>(enc);
    if (block_u.rows() != 2)
      throw std::invalid_argument("compose_plan: single-mode step needs a 2x2 holonomy");
    const std::array<int, 1> modes{e.mode};
    return embed_block_unitary(space, modes, {{0}, {1}}, block_u);
  }
  const auto& e = std::get<DualRailEncoding>(enc);
  const std::array<int, 2> modes{e.mode_a, e.mode_b};
  if (block_u.rows() == 2)
    return embed_block_unitary(space, modes, dual_rail_states(), block_u);
  if (block_u.rows() == 4) {
    // chart-block order {00, 01, 10, 11} on the pair
    return embed_block_unitary(space, modes, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, block_u);
  }
  throw std::invalid_argument("compose_plan: dual-rail step needs a 2x2 or 4x4 holonomy");
}

}  // namespace

ComposeResult compose_plan(const FockSpace& space, const GatePlan& plan,
                           const std::vector<QubitEncoding>& encodings) {
  for (const auto& enc : encodings) {
    if (std::holds_alternative<SingleModeEncoding>(enc)) {
      const int m = std::get<SingleModeEncoding>(enc).mode;
      if (m < 0 || m >= space.n_modes) throw std::invalid_argument("encoding mode out of range");
    } else {
      const auto& e = std::get<DualRailEncoding>(enc);
      if (e.mode_a == e.mode_b) throw std::invalid_argument("dual-rail modes must differ");
      if (e.mode_a < 0 || e.mode_b < 0 || e.mode_a >= space.n_modes || e.mode_b >= space.n_modes)
        throw std::invalid_argument("encoding mode out of range");
    }
  }

  const long dim = space.total_dim();
  Matrix u = Matrix::Identity(dim, dim);
  for (const auto& step : plan.steps) {
    Matrix block;
    int target = 0;
    if (std::holds_alternative<RotationStep>(step)) {
      const auto& s = std::get<RotationStep>(step);
      target = s.target;
      const PlanarRegion region = plan_rotation(s.axis, s.angle, space.cutoff);
      const double sigma = surface_sigma(region, axis_sigma_kind(s.axis));
      block = holonomy_from_sigma(axis_sigma_kind(s.axis), sigma).u;
      if (!std::holds_alternative<SingleModeEncoding>(encodings.at(target)))
        throw std::invalid_argument("compose_plan: rotation steps target single-mode qubits");
    } else if (std::holds_alternative<Su2RectStep>(step)) {
      const auto& s = std::get<Su2RectStep>(step);
      target = s.target;
      block = su2_rect_gate(s.kind, s.angle).u;
      if (!std::holds_alternative<DualRailEncoding>(encodings.at(target)))
        throw std::invalid_argument("compose_plan: SU(2) steps target dual-rail qubits");
    } else {
      const auto& s = std::get<LoopStep>(step);
      target = s.target;
      block = path_ordered_holonomy(s.loop, s.source).u;
      const bool single = std::holds_alternative<SingleModeEncoding>(encodings.at(target));
      if (single != (s.loop.chart.kind == ChartKind::SingleModeDS))
        throw std::invalid_argument("compose_plan: loop chart does not match target encoding");
    }
    u = embed_step_unitary(space, encodings.at(target), block) * u;
  }

  // logical basis: tensor product over encodings, each contributing {0, 1}
  const int k = static_cast<int>(encodings.size());
  const long ldim = 1L << k;
  std::vector<long> basis(ldim);
  for (long b = 0; b < ldim; ++b) {
    std::vector<int> occ(space.n_modes, 0);
    for (int q = 0; q < k; ++q) {
      const int bit = (b >> (k - 1 - q)) & 1;  // qubit 0 is the leftmost label
      if (std::holds_alternative<SingleModeEncoding>(encodings[q])) {
        occ[std::get<SingleModeEncoding>(encodings[q]).mode] = bit;
      } else {
        const auto& e = std::get<DualRailEncoding>(encodings[q]);
        occ[e.mode_a] = bit;      // |0>_L = |01>, |1>_L = |10>
        occ[e.mode_b] = 1 - bit;
      }
    }
    basis[b] = space.flat_index(occ);
  }
  ComposeResult out;
  out.logical = Matrix(ldim, ldim);
  for (long r = 0; r < ldim; ++r)
    for (long c = 0; c < ldim; ++c) out.logical(r, c) = u(basis[r], basis[c]);
  std::vector<char> in_basis(dim, 0);
  for (long b : basis) in_basis[b] = 1;
  double lost = 0;
  for (long c : basis)
    for (long r = 0; r < dim; ++r)
      if (!in_basis[r]) lost += std::norm(u(r, c));
  out.leakage = std::sqrt(lost);
  return out;
}

SwapResult swap_gate(const std::array<int, 4>& beams, int cutoff) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (beams[i] == beams[j]) throw std::invalid_argument("swap_gate: beams must be distinct");
  const FockSpace space(4, cutoff);
  // Gamma(C1) at beta = pi/4 between beams (1,3), at 3 pi/4 between (2,4);
  // the pairs interleave the two dual-rail qubits, so embed directly.
  const Matrix g13 = su2_rect_gate(Su2Rect::C1, std::numbers::pi / 4).u;
  const Matrix g24 = su2_rect_gate(Su2Rect::C1, 3 * std::numbers::pi / 4).u;

  const std::array<int, 2> m13{beams[0], beams[2]};
  const std::array<int, 2> m24{beams[1], beams[3]};
  const Matrix u13 =
      embed_block_unitary(space, m13, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, g13);
  const Matrix u24 =
      embed_block_unitary(space, m24, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, g24);
  const Matrix u = u24 * u13;

  // logical two-qubit basis: qubit A = (beams[0], beams[1]), B = (beams[2], beams[3])
  std::vector<long> basis(4);
  for (int b = 0; b < 4; ++b) {
    std::vector<int> occ(4, 0);
    const int bitA = (b >> 1) & 1, bitB = b & 1;
    occ[beams[0]] = bitA;
    occ[beams[1]] = 1 - bitA;
    occ[beams[2]] = bitB;
    occ[beams[3]] = 1 - bitB;
    basis[b] = space.flat_index(occ);
  }
  SwapResult out;
  out.logical = Matrix(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out.logical(r, c) = u(basis[r], basis[c]);
  out.distance_to_swap = distance_up_to_phase(out.logical, u_swap());
  std::vector<char> in_basis(space.total_dim(), 0);
  for (long b : basis) in_basis[b] = 1;
  double lost = 0;
  for (long b : basis)
    for (long r = 0; r < space.total_dim(); ++r)
      if (!in_basis[r]) lost += std::norm(u(r, b));
  out.leakage = std::sqrt(lost);
  double off = 0;
  const Matrix pattern = u_swap();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (pattern(r, c) == 0.0) off = std::max(off, std::abs(out.logical(r, c)));
  out.max_off_pattern = off;
  return out;
}

}  // namespace holoq
