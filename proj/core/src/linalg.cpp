#include "ptosc/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "ptosc/errors.hpp"

namespace ptosc {

using Complex = std::complex<double>;

std::vector<double> SpectralDecomposition::real_values() const {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i].real();
  return out;
}

namespace {

bool value_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

SpectralDecomposition eig_hermitian(const OperatorMatrix& m, bool with_vectors) {
  if (!m.has(kHermitian))
    throw ValidationError("eig_hermitian requires a hermitian-flagged matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
  solver.compute(m.entries,
                 with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("hermitian eigensolver did not converge");

  SpectralDecomposition out;
  const Eigen::Index n = m.size();
  out.values.reserve(n);
  for (Eigen::Index i = 0; i < n; ++i) out.values.emplace_back(solver.eigenvalues()(i), 0.0);
  if (with_vectors) {
    out.vectors = solver.eigenvectors();
    out.residuals.resize(n);
    const Eigen::MatrixXcd mv = m.entries * (*out.vectors);
    for (Eigen::Index i = 0; i < n; ++i)
      out.residuals[i] =
          (mv.col(i) - solver.eigenvalues()(i) * out.vectors->col(i)).norm();
  }
  return out;
}

SpectralDecomposition eig_general(const OperatorMatrix& m) {
  if (m.entries.rows() != m.entries.cols())
    throw DimensionMismatch("eig_general requires a square matrix");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m.entries, false);
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("general eigensolver did not converge");
  SpectralDecomposition out;
  const Eigen::Index n = m.size();
  out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(out.values.begin(), out.values.end(), value_less);
  return out;
}

InverseIterationResult eigvec_inverse_iteration(const OperatorMatrix& m,
                                                Complex shift) {
  const Eigen::Index n = m.size();
  if (n == 0) throw ValidationError("empty matrix");
  const double scale = std::max(operator_norm(m.entries), 1e-300);
  const double target = 1e-8 * scale;

  // Deterministic start biased toward the diagonal entry nearest the shift.
  Eigen::VectorXcd v = Eigen::VectorXcd::Constant(n, Complex(1.0, 0.0));
  Eigen::Index seed = 0;
  for (Eigen::Index i = 1; i < n; ++i)
    if (std::abs(m.entries(i, i) - shift) < std::abs(m.entries(seed, seed) - shift))
      seed = i;
  v(seed) += Complex(double(n), 0.0);
  v.normalize();

  Complex current_shift = shift;
  bool perturbed = false;
  int factorizations = 0;
  while (factorizations < 8) {
    ++factorizations;
    Eigen::MatrixXcd shifted = m.entries;
    shifted.diagonal().array() -= current_shift;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);

    bool restart = false;
    for (int iter = 0; iter < 25; ++iter) {
      Eigen::VectorXcd w = lu.solve(v);
      if (!w.allFinite() || w.norm() == 0.0) {
        // Shift sits exactly on the spectrum; retry once with a nudge.
        if (perturbed) throw SingularShift("shift lies on the spectrum");
        current_shift += Complex(1e-11, 1e-11) * (1.0 + std::abs(current_shift));
        perturbed = true;
        restart = true;
        break;
      }
      v = w / w.norm();
      const Eigen::VectorXcd mv = m.entries * v;
      const Complex rayleigh = v.dot(mv);  // conj(v)^T M v
      const double residual = (mv - rayleigh * v).norm();
      if (residual <= target) return {v, rayleigh, residual};
      if (iter >= 4) {
        // Stalled at this shift: refine it and refactor.
        current_shift = rayleigh;
        restart = true;
        break;
      }
    }
    if (!restart) break;
  }
  throw NoConvergence("inverse iteration did not reach the residual target");
}

}  // namespace ptosc
