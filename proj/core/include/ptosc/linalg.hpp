#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "ptosc/operators.hpp"

namespace ptosc {

struct SpectralDecomposition {
  // Sorted ascending by real part, ties by imaginary part.
  std::vector<std::complex<double>> values;
  // Unit-norm columns aligned with values (when requested).
  std::optional<Eigen::MatrixXcd> vectors;
  // Backward errors ||M v - lambda v|| per pair (when vectors are computed).
  std::vector<double> residuals;

  std::vector<double> real_values() const;
};

// Requires the hermitian flag; all eigenvalues real, eigenvectors orthonormal.
SpectralDecomposition eig_hermitian(const OperatorMatrix& m, bool with_vectors = true);

// Eigenvalues of a general square complex matrix (values only).
SpectralDecomposition eig_general(const OperatorMatrix& m);

struct InverseIterationResult {
  Eigen::VectorXcd vector;          // unit norm
  std::complex<double> value;       // refined eigenvalue
  double residual;                  // ||M v - value v||
};

// Shifted inverse iteration with Rayleigh-quotient refinement. A shift that
// lands exactly on the spectrum is retried with an internal perturbation;
// SingularShift is thrown only if the retry fails too.
InverseIterationResult eigvec_inverse_iteration(const OperatorMatrix& m,
                                                std::complex<double> shift);

}  // namespace ptosc
