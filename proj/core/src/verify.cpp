#include "ptosc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "ptosc/errors.hpp"
#include "ptosc/format.hpp"

namespace ptosc {

using Complex = std::complex<double>;

namespace {

// Inner product conjugate-linear in the second argument, the convention under
// which lambda_l <phi_l, P psi_k> = mu_k <phi_l, psi_k> holds verbatim.
Complex inner(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return b.dot(a);
}

VerificationReport make_report(const char* name, const BasisTruncation& t,
                               const PolynomialPotential& w, double g) {
  VerificationReport report;
  report.check_name = name;
  report.dim = t.dim;
  report.cutoff = t.cutoff;
  report.potential = to_string(w);
  report.g = g;
  return report;
}

std::string fmt(double v) { return format_double(v); }

Eigen::VectorXcd apply_parity_signs(const std::vector<int>& par,
                                    const Eigen::VectorXcd& v) {
  Eigen::VectorXcd out = v;
  for (Eigen::Index i = 0; i < out.size(); ++i)
    if (par[i] < 0) out(i) = -out(i);
  return out;
}

std::vector<int> basis_parities(const BasisTruncation& t) {
  const auto basis = enumerate_basis(t);
  std::vector<int> par(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) par[i] = basis[i].parity();
  return par;
}

}  // namespace

VerificationReport check_pseudohermiticity(const BasisTruncation& t,
                                           const PolynomialPotential& w, double g) {
  auto report = make_report("pseudohermiticity", t, w, g);
  const auto h = assemble_h(t, w, g);
  const auto par = basis_parities(t);
  const Eigen::Index n = h.size();
  double worst = 0.0;
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      const Complex lhs = double(par[a]) * h.entries(a, b) * double(par[b]);
      const Complex rhs = std::conj(h.entries(b, a));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  report.measured_discrepancy = worst;
  report.tolerance = 0.0;  // structural identity, exact at finite dimension
  report.passed = worst <= report.tolerance;
  report.details.push_back("max |P H P - H^dagger| = " + fmt(worst));
  return report;
}

VerificationReport check_singular_values(const BasisTruncation& t,
                                         const PolynomialPotential& w, double g) {
  auto report = make_report("singular_values", t, w, g);
  const auto w_matrix = assemble_w(t, w);
  const auto h = assemble_h(w_matrix, g);
  const auto q = assemble_q(w_matrix, g);

  const auto q_eigs = eig_hermitian(q, false);
  std::vector<double> from_q = q_eigs.real_values();
  for (double& v : from_q) v = std::abs(v);
  std::sort(from_q.begin(), from_q.end());

  OperatorMatrix gram;
  gram.basis = t;
  gram.entries = adjoint_times_naive(h.entries, h.entries);
  gram.flags = kHermitian;
  std::vector<double> from_gram = eig_hermitian(gram, false).real_values();
  for (double& v : from_gram) v = std::sqrt(std::max(v, 0.0));
  std::sort(from_gram.begin(), from_gram.end());

  double worst = 0.0;
  for (std::size_t i = 0; i < from_q.size(); ++i)
    worst = std::max(worst, std::abs(from_q[i] - from_gram[i]));
  const double h_norm = from_gram.empty() ? 0.0 : from_gram.back();

  report.measured_discrepancy = worst;
  report.tolerance = 1e-10 * h_norm;
  report.passed = worst <= report.tolerance;
  report.details.push_back("lowest |eig Q|: " + fmt(from_q.front()) +
                           ", lowest sqrt(eig H^dagger H): " + fmt(from_gram.front()));
  report.details.push_back("||H|| = " + fmt(h_norm));
  return report;
}

VerificationReport check_canonical_expansion(const BasisTruncation& t,
                                             const PolynomialPotential& w, double g,
                                             int trial_vectors) {
  auto report = make_report("canonical_expansion", t, w, g);
  const auto w_matrix = assemble_w(t, w);
  const auto h = assemble_h(w_matrix, g);
  const auto q = assemble_q(w_matrix, g);
  const auto par = basis_parities(t);
  const Eigen::Index n = h.size();

  const auto decomposition = eig_hermitian(q, true);
  const Eigen::MatrixXcd& psi = *decomposition.vectors;
  const double h_norm = operator_norm(h.entries);

  // Reconstruction residual on random unit trials.
  std::mt19937 rng(0x9e3779b9u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst_reconstruction = 0.0;
  for (int trial = 0; trial < trial_vectors; ++trial) {
    Eigen::VectorXcd u(n);
    for (Eigen::Index i = 0; i < n; ++i) u(i) = Complex(gauss(rng), gauss(rng));
    u.normalize();
    Eigen::VectorXcd coefficients = psi.adjoint() * u;  // <u, psi_k>
    for (Eigen::Index k = 0; k < n; ++k)
      coefficients(k) *= decomposition.values[k].real();
    const Eigen::VectorXcd expanded = apply_parity_signs(par, psi * coefficients);
    worst_reconstruction =
        std::max(worst_reconstruction, (h.entries * u - expanded).norm());
  }

  // Diagonalization residual max |<P psi_k, H psi_l> - mu_k delta_kl|.
  Eigen::MatrixXcd parity_psi = psi;
  for (Eigen::Index i = 0; i < n; ++i)
    if (par[i] < 0) parity_psi.row(i) = -parity_psi.row(i);
  Eigen::MatrixXcd gram = parity_psi.adjoint() * (h.entries * psi);
  for (Eigen::Index k = 0; k < n; ++k) gram(k, k) -= decomposition.values[k].real();
  const double diag_residual = gram.cwiseAbs().maxCoeff();

  // The two orthonormal bases psi_k and P psi_k are not biorthogonal; record
  // the largest off-diagonal overlap as a witness.
  Eigen::MatrixXcd overlap = psi.adjoint() * parity_psi;
  double witness = 0.0;
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = 0; l < n; ++l)
      if (k != l) witness = std::max(witness, std::abs(overlap(k, l)));

  report.measured_discrepancy = std::max(worst_reconstruction, diag_residual);
  report.tolerance = 1e-9 * h_norm;
  report.passed = report.measured_discrepancy <= report.tolerance;
  report.details.push_back("max reconstruction residual over " +
                           std::to_string(trial_vectors) +
                           " trials = " + fmt(worst_reconstruction));
  report.details.push_back("diagonalization residual = " + fmt(diag_residual));
  report.details.push_back("max off-diagonal |<psi_k, P psi_l>| = " + fmt(witness));
  return report;
}

VerificationReport check_eigen_relation(const BasisTruncation& t,
                                        const PolynomialPotential& w, double g,
                                        int window) {
  auto report = make_report("eigen_relation", t, w, g);
  const auto w_matrix = assemble_w(t, w);
  const auto h = assemble_h(w_matrix, g);
  const auto q = assemble_q(w_matrix, g);
  const auto par = basis_parities(t);
  const double h_norm = operator_norm(h.entries);

  const auto q_eigs = eig_hermitian(q, true);
  const auto h_eigs = eig_general(h);
  const Eigen::Index n = h.size();
  window = std::min<int>(window, static_cast<int>(n));

  // Lowest-modulus window on both sides.
  std::vector<int> lambda_order(n), mu_order(n);
  std::iota(lambda_order.begin(), lambda_order.end(), 0);
  std::iota(mu_order.begin(), mu_order.end(), 0);
  std::sort(lambda_order.begin(), lambda_order.end(), [&](int a, int b) {
    return std::abs(h_eigs.values[a]) < std::abs(h_eigs.values[b]);
  });
  std::sort(mu_order.begin(), mu_order.end(), [&](int a, int b) {
    return std::abs(q_eigs.values[a].real()) < std::abs(q_eigs.values[b].real());
  });

  double worst_normalized = 0.0;
  int skipped = 0;
  for (int li = 0; li < window; ++li) {
    const Complex lambda = h_eigs.values[lambda_order[li]];
    double separation = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != lambda_order[li])
        separation = std::min(separation, std::abs(h_eigs.values[j] - lambda));
    if (separation <= 1e-8 * h_norm) {
      ++skipped;
      report.details.push_back("skipped degenerate lambda = " + fmt(lambda.real()) +
                               (lambda.imag() != 0.0
                                    ? " + " + fmt(lambda.imag()) + "i"
                                    : std::string()));
      continue;
    }
    const auto phi = eigvec_inverse_iteration(h, lambda);
    for (int ki = 0; ki < window; ++ki) {
      const int k = mu_order[ki];
      const double mu = q_eigs.values[k].real();
      const Eigen::VectorXcd psi_k = q_eigs.vectors->col(k);
      const Eigen::VectorXcd parity_psi_k = apply_parity_signs(par, psi_k);
      const Complex lhs = phi.value * inner(phi.vector, parity_psi_k);
      const Complex rhs = mu * inner(phi.vector, psi_k);
      const double scale = std::abs(phi.value) + std::abs(mu);
      worst_normalized = std::max(worst_normalized, std::abs(lhs - rhs) / scale);
    }
  }

  report.measured_discrepancy = worst_normalized;
  report.tolerance = 1e-7;
  report.passed = worst_normalized <= report.tolerance;
  report.details.push_back("window " + std::to_string(window) + "x" +
                           std::to_string(window) + ", skipped " +
                           std::to_string(skipped));
  report.details.push_back(
      "max |lambda <phi,P psi> - mu <phi,psi>| / (|lambda|+|mu|) = " +
      fmt(worst_normalized));
  return report;
}

VerificationReport check_weyl(const BasisTruncation& t, const PolynomialPotential& w,
                              double g, int k_max) {
  auto report = make_report("weyl", t, w, g);
  const auto w_matrix = assemble_w(t, w);
  const auto h = assemble_h(w_matrix, g);
  const auto q = assemble_q(w_matrix, g);

  std::vector<double> lambda_mod;
  for (const auto& v : eig_general(h).values) lambda_mod.push_back(std::abs(v));
  std::vector<double> singular;
  for (const auto& v : eig_hermitian(q, false).values)
    singular.push_back(std::abs(v.real()));

  // Weyl's inequalities hold for the finite matrix when both sequences are
  // paired in decreasing-modulus order.
  std::sort(lambda_mod.begin(), lambda_mod.end(), std::greater<>());
  std::sort(singular.begin(), singular.end(), std::greater<>());

  const int k_stop = std::min<int>(k_max, static_cast<int>(singular.size()));
  double sum_lambda = 0.0, sum_mu = 0.0, log_lambda = 0.0, log_mu = 0.0;
  double worst = 0.0;  // most negative normalized slack, as a violation magnitude
  for (int k = 1; k <= k_stop; ++k) {
    sum_lambda += lambda_mod[k - 1];
    sum_mu += singular[k - 1];
    const double sum_slack = (sum_mu - sum_lambda) / sum_mu;
    double product_slack;
    if (lambda_mod[k - 1] == 0.0) {
      product_slack = std::numeric_limits<double>::infinity();
      log_lambda = -std::numeric_limits<double>::infinity();
    } else {
      log_lambda += std::log(lambda_mod[k - 1]);
      log_mu += std::log(singular[k - 1]);
      product_slack = log_mu - log_lambda;
    }
    worst = std::max(worst, std::max(-sum_slack, -product_slack));
    report.details.push_back("k=" + std::to_string(k) + " sum slack " + fmt(sum_slack) +
                             " log-product slack " + fmt(product_slack));
  }

  report.measured_discrepancy = worst;
  report.tolerance = 1e-8;
  report.passed = worst <= report.tolerance;
  return report;
}

ConvergenceStudy convergence_study(std::span<const BasisTruncation> cutoffs,
                                   const PolynomialPotential& w, double g,
                                   ConvergenceQuantity quantity, int count) {
  if (cutoffs.empty()) throw ValidationError("convergence study needs cutoffs");
  for (std::size_t i = 1; i < cutoffs.size(); ++i)
    if (cutoffs[i].cutoff <= cutoffs[i - 1].cutoff || cutoffs[i].dim != cutoffs[0].dim)
      throw ValidationError("cutoffs must be ascending within one dimension");

  ConvergenceStudy study;
  study.quantity = quantity == ConvergenceQuantity::SingularValues
                       ? "singular_values"
                       : "eigenvalue_moduli";
  for (const auto& t : cutoffs) {
    std::vector<double> values;
    if (quantity == ConvergenceQuantity::SingularValues) {
      for (const auto& v : eig_hermitian(assemble_q(t, w, g), false).values)
        values.push_back(std::abs(v.real()));
    } else {
      for (const auto& v : eig_general(assemble_h(t, w, g)).values)
        values.push_back(std::abs(v));
    }
    std::sort(values.begin(), values.end());
    values.resize(std::min<std::size_t>(values.size(), count));
    study.cutoffs.push_back(t.cutoff);
    study.values.push_back(std::move(values));
  }

  for (std::size_t r = 1; r < study.values.size(); ++r) {
    std::vector<double> diff(study.values[r].size());
    for (std::size_t c = 0; c < diff.size(); ++c)
      diff[c] = std::abs(study.values[r][c] - study.values[r - 1][c]);
    study.diffs.push_back(std::move(diff));
  }

  // Stagnation: a tracked value whose successive change grew and is still
  // well above roundoff.
  for (std::size_t c = 0; c < study.values.front().size() && !study.stagnation; ++c)
    for (std::size_t r = 1; r < study.diffs.size(); ++r) {
      const double scale = std::abs(study.values.back()[c]) + 1.0;
      if (study.diffs[r][c] > 2.0 * study.diffs[r - 1][c] &&
          study.diffs[r][c] > 1e-12 * scale) {
        study.stagnation = true;
        break;
      }
    }
  return study;
}

}  // namespace ptosc
