#pragma once
// Gauss-Legendre nodes and weights (Newton iteration on P_n).

#include <vector>

namespace holoq {

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

const QuadratureRule& gauss_legendre(int order);  // cached per order

/// Nodes/weights mapped to [a, b]; b < a yields a sign-reversed rule.
QuadratureRule gauss_legendre_on(int order, double a, double b);

}  // namespace holoq
