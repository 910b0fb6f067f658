#pragma once

#include <span>
#include <string>
#include <vector>

#include "ptosc/linalg.hpp"
#include "ptosc/operators.hpp"

namespace ptosc {

struct VerificationReport {
  std::string check_name;
  int dim = 0;
  int cutoff = 0;
  std::string potential;
  double g = 0.0;
  double measured_discrepancy = 0.0;
  double tolerance = 0.0;
  bool passed = false;  // measured_discrepancy <= tolerance
  std::vector<std::string> details;
};

// max |P H(g) P - H(g)^dagger|, expected exactly zero for real g.
VerificationReport check_pseudohermiticity(const BasisTruncation& t,
                                           const PolynomialPotential& w, double g);

// sorted |eig Q| against sorted sqrt(eig H^dagger H), elementwise.
VerificationReport check_singular_values(const BasisTruncation& t,
                                         const PolynomialPotential& w, double g);

// Reconstruction H u = sum_k mu_k <u,psi_k> P psi_k on random unit trials,
// plus the diagonalization residual max |<P psi_k, H psi_l> - mu_k delta_kl|.
VerificationReport check_canonical_expansion(const BasisTruncation& t,
                                             const PolynomialPotential& w, double g,
                                             int trial_vectors);

// lambda_l <phi_l, P psi_k> = mu_k <phi_l, psi_k> over a window of the
// lowest-modulus eigenpairs on both sides. Pairs whose eigenvalue is not
// separated from its neighbours are reported as skipped, not failed.
VerificationReport check_eigen_relation(const BasisTruncation& t,
                                        const PolynomialPotential& w, double g,
                                        int window = 8);

// Weyl inequalities: partial sums and products of eigenvalue moduli against
// singular values, both paired in decreasing-modulus order.
VerificationReport check_weyl(const BasisTruncation& t, const PolynomialPotential& w,
                              double g, int k_max);

enum class ConvergenceQuantity { SingularValues, EigenvalueModuli };

struct ConvergenceStudy {
  std::string quantity;
  std::vector<int> cutoffs;
  std::vector<std::vector<double>> values;  // one row per cutoff
  std::vector<std::vector<double>> diffs;   // successive |change|, per cutoff after the first
  bool stagnation = false;                  // some tracked value stopped converging
};

ConvergenceStudy convergence_study(std::span<const BasisTruncation> cutoffs,
                                   const PolynomialPotential& w, double g,
                                   ConvergenceQuantity quantity, int count);

}  // namespace ptosc
