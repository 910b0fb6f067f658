#pragma once

#include <vector>

namespace ptosc {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Laguerre rule for the weight e^{-u} on [0, inf), nodes ascending
// (Golub-Welsch on the Laguerre Jacobi matrix).
QuadratureRule gauss_laguerre(int n);

}  // namespace ptosc
