#pragma once
// Logical encodings, target-gate planning from loop areas, the SWAP
// construction, and gate composition on the full Fock space.

#include "holoq/holonomy.hpp"

#include <variant>

namespace holoq {

struct SingleModeEncoding {
  int mode = 0;  // logical {|0>, |1>}
};
struct DualRailEncoding {
  int mode_a = 0, mode_b = 1;  // logical {|01>, |10>}
};
using QubitEncoding = std::variant<SingleModeEncoding, DualRailEncoding>;

enum class Axis { X, Y, Z };

/// Rectangle whose surface_sigma equals `angle` (R extent fixed at 1, the
/// conjugate extent solved in closed form; negative angles reverse the
/// orientation). Axis generators follow the field-strength reconciliation:
/// X -> sigma1 (plane II), Y -> sigma2 (plane I), Z -> s3_hat (plane III).
PlanarRegion plan_rotation(Axis axis, double angle, int cutoff = 32);

SigmaKind axis_sigma_kind(Axis axis);

struct SwapResult {
  Matrix logical;            // 4x4 on the two-qubit dual-rail basis
  double distance_to_swap;   // up to global phase
  double max_off_pattern;    // largest entry outside the permutation pattern
  double leakage;
};

/// Gamma(C1) at beta = pi/4 between beams (1,3) and beta = 3 pi/4 between
/// beams (2,4), dual-rail qubits (1,2) and (3,4). Beam indices 0-based.
SwapResult swap_gate(const std::array<int, 4>& beams, int cutoff = 4);

struct RotationStep {
  Axis axis;
  double angle;
  int target = 0;  // index into the plan's encoding list
};
struct Su2RectStep {
  Su2Rect kind;
  double angle;
  int target = 0;  // dual-rail target
};
struct LoopStep {
  LoopPath loop;
  ConnSource source = ConnSource::Analytic;
  int target = 0;
};
using GateStep = std::variant<RotationStep, Su2RectStep, LoopStep>;

struct GatePlan {
  std::vector<GateStep> steps;
};

struct ComposeResult {
  Matrix logical;  // 2^k x 2^k over the ordered encodings
  double leakage;
};

/// Ordered product of the plan's holonomies embedded on the full space
/// (later steps leftmost), projected onto the logical basis.
ComposeResult compose_plan(const FockSpace& space, const GatePlan& plan,
                           const std::vector<QubitEncoding>& encodings);

/// max |A - e^{i phi} B| minimized over the global phase phi.
double distance_up_to_phase(const Matrix& a, const Matrix& b);

Matrix u_swap();

}  // namespace holoq
