#pragma once
// Truncated multimode bosonic Fock space and dense complex operators on it.

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace holoq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Raised when a result fails its truncation/discretization consistency check.
class convergence_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// m-mode Fock space with per-mode occupations 0..cutoff-1. Mode 0 is the
/// slowest-varying index of the flat basis ordering.
struct FockSpace {
  int n_modes;
  int cutoff;

  FockSpace(int n_modes_, int cutoff_);

  long total_dim() const;
  long flat_index(std::span<const int> occ) const;
  std::vector<int> occupations(long k) const;

  bool operator==(const FockSpace&) const = default;
};

/// Dense operator bound to its space. expm-produced unitaries satisfy
/// ||U^dag U - 1||_max < 1e-10; products of truncated operators can degrade
/// near the cutoff edge (interior-truncation caveat).
struct Operator {
  FockSpace space;
  Matrix mat;
};

/// Ordered basis of a degenerate code subspace; every occupation entry is 0
/// or 1.
struct CodeBlock {
  std::vector<std::vector<int>> states;

  static CodeBlock qubit();           // {|0>, |1>}, one mode
  static CodeBlock two_mode_block();  // {|00>, |01>, |10>, |11>}

  int dim() const { return static_cast<int>(states.size()); }
  void validate(const FockSpace& space) const;
};

Matrix annihilation_matrix(const FockSpace& space, int mode);
Operator annihilation_op(const FockSpace& space, int mode);
Matrix number_matrix(const FockSpace& space, int mode);

/// exp(G) for anti-Hermitian G, computed from the eigendecomposition of iG.
/// Rejects inputs with ||G + G^dag||_max >= tol.
Matrix expm_antihermitian(const Matrix& g, double tol = 1e-10);

/// Same, but exploiting an integer grading conserved by G: basis indices with
/// equal grade form invariant blocks that are exponentiated independently.
/// G must vanish between different grades.
Matrix expm_antihermitian_graded(const Matrix& g, std::span<const long> grade,
                                 double tol = 1e-10);

/// <rho_bar| U |rho> over the block basis order.
Matrix project_block(const FockSpace& space, const Matrix& u, const CodeBlock& block);
Matrix project_block(const Operator& u, const CodeBlock& block);

/// sqrt(dim_block - ||project_block(U)||_F^2) for unitary U: 0 iff U maps
/// the block unitarily onto itself. Evaluated as the weight of the block
/// columns outside the block, which is exact when the block closes.
double leakage(const FockSpace& space, const Matrix& u, const CodeBlock& block);
double leakage(const Operator& u, const CodeBlock& block);

/// Unitary acting as block_u on span(states) of the given modes for every
/// configuration of the remaining modes, and as the identity elsewhere.
Matrix embed_block_unitary(const FockSpace& space, std::span<const int> modes,
                           const std::vector<std::vector<int>>& states,
                           const Matrix& block_u);

Matrix kron(const Matrix& a, const Matrix& b);

/// Single-mode unitary u tensored with identities on the other modes.
Matrix embed_mode_unitary(const FockSpace& space, int mode, const Matrix& u);

double max_abs(const Matrix& m);
double unitarity_defect(const Matrix& u);  // ||U^dag U - 1||_max

}  // namespace holoq
