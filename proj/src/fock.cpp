#include "holoq/fock.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace holoq {

FockSpace::FockSpace(int n_modes_, int cutoff_) : n_modes(n_modes_), cutoff(cutoff_) {
  if (n_modes < 1) throw std::invalid_argument("FockSpace: n_modes must be positive");
  if (cutoff < 1) throw std::invalid_argument("FockSpace: cutoff must be positive");
  if (std::pow(static_cast<double>(cutoff), n_modes) > 1.5e6)
    throw std::invalid_argument("FockSpace: total dimension too large for dense storage");
}

long FockSpace::total_dim() const {
  long d = 1;
  for (int l = 0; l < n_modes; ++l) d *= cutoff;
  return d;
}

long FockSpace::flat_index(std::span<const int> occ) const {
  if (static_cast<int>(occ.size()) != n_modes)
    throw std::invalid_argument("flat_index: wrong occupation length");
  long k = 0;
  for (int nu : occ) {
    if (nu < 0 || nu >= cutoff) throw std::invalid_argument("flat_index: occupation out of range");
    k = k * cutoff + nu;
  }
  return k;
}

std::vector<int> FockSpace::occupations(long k) const {
  std::vector<int> occ(n_modes);
  for (int l = n_modes - 1; l >= 0; --l) {
    occ[l] = static_cast<int>(k % cutoff);
    k /= cutoff;
  }
  return occ;
}

CodeBlock CodeBlock::qubit() { return {{{0}, {1}}}; }

CodeBlock CodeBlock::two_mode_block() { return {{{0, 0}, {0, 1}, {1, 0}, {1, 1}}}; }

void CodeBlock::validate(const FockSpace& space) const {
  for (const auto& s : states) {
    if (static_cast<int>(s.size()) != space.n_modes)
      throw std::invalid_argument("CodeBlock: state arity does not match space");
    for (int nu : s)
      if (nu != 0 && nu != 1) throw std::invalid_argument("CodeBlock: occupations must be 0 or 1");
  }
  for (size_t i = 0; i < states.size(); ++i)
    for (size_t j = i + 1; j < states.size(); ++j)
      if (states[i] == states[j]) throw std::invalid_argument("CodeBlock: duplicate state");
}

Matrix annihilation_matrix(const FockSpace& space, int mode) {
  if (mode < 0 || mode >= space.n_modes)
    throw std::invalid_argument("annihilation_matrix: mode out of range");
  Matrix a = Matrix::Zero(space.cutoff, space.cutoff);
  for (int nu = 1; nu < space.cutoff; ++nu) a(nu - 1, nu) = std::sqrt(static_cast<double>(nu));
  return embed_mode_unitary(space, mode, a);
}

Operator annihilation_op(const FockSpace& space, int mode) {
  return {space, annihilation_matrix(space, mode)};
}

Matrix number_matrix(const FockSpace& space, int mode) {
  if (mode < 0 || mode >= space.n_modes)
    throw std::invalid_argument("number_matrix: mode out of range");
  const long dim = space.total_dim();
  Matrix n = Matrix::Zero(dim, dim);
  for (long k = 0; k < dim; ++k) n(k, k) = static_cast<double>(space.occupations(k)[mode]);
  return n;
}

Matrix expm_antihermitian(const Matrix& g, double tol) {
  if (g.rows() != g.cols()) throw std::invalid_argument("expm: square matrix required");
  const double defect = max_abs(g + g.adjoint());
  if (defect >= tol)
    throw std::invalid_argument("expm: input not anti-Hermitian (||G+G^dag||_max = " +
                                std::to_string(defect) + ")");
  // G = -iH with H Hermitian; exp(G) = V exp(-i diag) V^dag.
  const Eigen::MatrixXcd h = Complex(0, 1) * g;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("expm: eigendecomposition failed");
  const auto& v = es.eigenvectors();
  Eigen::VectorXcd phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases(i) = std::exp(Complex(0, -es.eigenvalues()(i)));
  return v * phases.asDiagonal() * v.adjoint();
}

Matrix expm_antihermitian_graded(const Matrix& g, std::span<const long> grade, double tol) {
  const long dim = g.rows();
  if (static_cast<long>(grade.size()) != dim)
    throw std::invalid_argument("expm_graded: grade length mismatch");
  std::map<long, std::vector<long>> sectors;
  for (long k = 0; k < dim; ++k) sectors[grade[k]].push_back(k);
  // the grading must be conserved
  for (long r = 0; r < dim; ++r)
    for (long c = 0; c < dim; ++c)
      if (grade[r] != grade[c] && std::abs(g(r, c)) > 1e-14)
        throw std::invalid_argument("expm_graded: generator does not conserve the grading");
  Matrix u = Matrix::Zero(dim, dim);
  for (const auto& [gr, idx] : sectors) {
    const long n = static_cast<long>(idx.size());
    Matrix sub(n, n);
    for (long r = 0; r < n; ++r)
      for (long c = 0; c < n; ++c) sub(r, c) = g(idx[r], idx[c]);
    Matrix usub = expm_antihermitian(sub, tol);
    for (long r = 0; r < n; ++r)
      for (long c = 0; c < n; ++c) u(idx[r], idx[c]) = usub(r, c);
  }
  return u;
}

Matrix project_block(const FockSpace& space, const Matrix& u, const CodeBlock& block) {
  block.validate(space);
  const int d = block.dim();
  Matrix p(d, d);
  std::vector<long> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = space.flat_index(block.states[i]);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) p(r, c) = u(idx[r], idx[c]);
  return p;
}

Matrix project_block(const Operator& u, const CodeBlock& block) {
  return project_block(u.space, u.mat, block);
}

double leakage(const FockSpace& space, const Matrix& u, const CodeBlock& block) {
  // equal to sqrt(dim - ||project_block(u)||_F^2) for unitary u, but summed
  // over the out-of-block rows directly so exact block closure reports 0
  // instead of the sqrt(roundoff) floor of the cancelled form
  block.validate(space);
  std::vector<long> idx;
  for (const auto& s : block.states) idx.push_back(space.flat_index(s));
  std::vector<char> in_block(space.total_dim(), 0);
  for (long k : idx) in_block[k] = 1;
  double lost = 0;
  for (long c : idx)
    for (long r = 0; r < space.total_dim(); ++r)
      if (!in_block[r]) lost += std::norm(u(r, c));
  return std::sqrt(lost);
}

double leakage(const Operator& u, const CodeBlock& block) {
  return leakage(u.space, u.mat, block);
}

Matrix embed_block_unitary(const FockSpace& space, std::span<const int> modes,
                           const std::vector<std::vector<int>>& states, const Matrix& block_u) {
  const int nb = static_cast<int>(states.size());
  if (block_u.rows() != nb || block_u.cols() != nb)
    throw std::invalid_argument("embed_block_unitary: block size mismatch");
  for (int m : modes)
    if (m < 0 || m >= space.n_modes)
      throw std::invalid_argument("embed_block_unitary: mode out of range");
  for (const auto& s : states)
    if (s.size() != modes.size())
      throw std::invalid_argument("embed_block_unitary: state arity mismatch");

  const long dim = space.total_dim();
  Matrix u = Matrix::Identity(dim, dim);
  std::vector<int> occ;
  std::vector<int> sub(modes.size());
  for (long k = 0; k < dim; ++k) {
    occ = space.occupations(k);
    for (size_t i = 0; i < modes.size(); ++i) sub[i] = occ[modes[i]];
    int col = -1;
    for (int j = 0; j < nb; ++j)
      if (states[j] == sub) { col = j; break; }
    if (col < 0) continue;
    // column k of the embedded unitary
    u(k, k) = 0;
    for (int j = 0; j < nb; ++j) {
      std::vector<int> occ2 = occ;
      for (size_t i = 0; i < modes.size(); ++i) occ2[modes[i]] = states[j][i];
      u(space.flat_index(occ2), k) = block_u(j, col);
    }
  }
  return u;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

Matrix embed_mode_unitary(const FockSpace& space, int mode, const Matrix& u) {
  if (mode < 0 || mode >= space.n_modes)
    throw std::invalid_argument("embed_mode_unitary: mode out of range");
  if (u.rows() != space.cutoff || u.cols() != space.cutoff)
    throw std::invalid_argument("embed_mode_unitary: single-mode dimension mismatch");
  long left = 1, right = 1;
  for (int l = 0; l < mode; ++l) left *= space.cutoff;
  for (int l = mode + 1; l < space.n_modes; ++l) right *= space.cutoff;
  Matrix out = u;
  if (left > 1) out = kron(Matrix::Identity(left, left), out);
  if (right > 1) out = kron(out, Matrix::Identity(right, right));
  return out;
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double unitarity_defect(const Matrix& u) {
  return max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()));
}

}  // namespace holoq
