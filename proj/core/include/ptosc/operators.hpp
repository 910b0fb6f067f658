#pragma once

#include <Eigen/Dense>
#include <complex>

#include "ptosc/basis.hpp"
#include "ptosc/potential.hpp"

namespace ptosc {

// Structural facts about an assembled matrix. A flag is set only when the
// construction enforces the property exactly (not merely to roundoff).
enum MatrixFlag : unsigned {
  kHermitian = 1u << 0,
  kReal = 1u << 1,
  kDiagonal = 1u << 2,
  kParityOffBlock = 1u << 3,  // zero between equal-parity basis states
};

struct OperatorMatrix {
  BasisTruncation basis;
  Eigen::MatrixXcd entries;
  unsigned flags = 0;

  Eigen::Index size() const { return entries.rows(); }
  bool has(unsigned flag) const { return (flags & flag) == flag; }
  double hermiticity_defect() const;  // max |M - M^dagger|
};

// <n|x|n+1> = sqrt((n+1)/2) over the 1-d eigenfunctions of -d^2/dx^2 + x^2,
// as a matrix over n = 0..n_max.
OperatorMatrix position_matrix_1d(int n_max);

OperatorMatrix assemble_h0(const BasisTruncation& t);

OperatorMatrix assemble_parity(const BasisTruncation& t);

// W in the truncated basis, by padded ladder products: per-coordinate powers
// of x are formed on the enlarged range [0, L + deg W] and contracted there,
// then restricted to principal <= L, so every retained entry is exact.
// Equal-parity entries are exact zeros and the matrix is exactly symmetric.
OperatorMatrix assemble_w(const BasisTruncation& t, const PolynomialPotential& w);

// H(g) = H0 + i g W.
OperatorMatrix assemble_h(const BasisTruncation& t, const PolynomialPotential& w,
                          std::complex<double> g);
OperatorMatrix assemble_h(const OperatorMatrix& w_matrix, std::complex<double> g);

// Q(g) = P H(g). Exactly Hermitian for real g; for complex g the matrix is
// still assembled but the hermitian flag is withheld.
OperatorMatrix assemble_q(const BasisTruncation& t, const PolynomialPotential& w,
                          std::complex<double> g);
OperatorMatrix assemble_q(const OperatorMatrix& w_matrix, std::complex<double> g);

// Q'(g) = H(g) P.
OperatorMatrix assemble_q_prime(const BasisTruncation& t, const PolynomialPotential& w,
                                std::complex<double> g);

// Deterministic O(N^3) products with a fixed accumulation order, so that
// algebraically identical expressions evaluate to bitwise identical results.
Eigen::MatrixXcd multiply_naive(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);
Eigen::MatrixXcd adjoint_times_naive(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Spectral-norm estimate (power iteration on M^dagger M).
double operator_norm(const Eigen::MatrixXcd& m);

}  // namespace ptosc
