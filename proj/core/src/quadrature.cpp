#include "ptosc/quadrature.hpp"

#include <Eigen/Dense>

#include "ptosc/errors.hpp"

namespace ptosc {

QuadratureRule gauss_laguerre(int n) {
  if (n < 1) throw ValidationError("quadrature rule needs n >= 1");
  // Jacobi matrix of the Laguerre polynomials: diag 2k+1, off-diag k.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) jacobi(k, k) = 2.0 * k + 1.0;
  for (int k = 1; k < n; ++k) {
    jacobi(k, k - 1) = k;
    jacobi(k - 1, k) = k;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("Golub-Welsch eigensolve failed");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    rule.nodes[k] = solver.eigenvalues()(k);
    const double first = solver.eigenvectors()(0, k);
    rule.weights[k] = first * first;  // total mass integral e^{-u} du = 1
  }
  return rule;
}

}  // namespace ptosc
