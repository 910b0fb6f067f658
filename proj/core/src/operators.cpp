#include "ptosc/operators.hpp"

#include <cmath>
#include <map>

#include "ptosc/errors.hpp"

namespace ptosc {

using Complex = std::complex<double>;

double OperatorMatrix::hermiticity_defect() const {
  const Eigen::Index n = entries.rows();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j)
      worst = std::max(worst, std::abs(entries(i, j) - std::conj(entries(j, i))));
  return worst;
}

namespace {

Eigen::MatrixXd position_real(int n_max) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n_max + 1, n_max + 1);
  for (int n = 0; n < n_max; ++n) {
    const double v = std::sqrt((n + 1) / 2.0);
    x(n, n + 1) = v;
    x(n + 1, n) = v;
  }
  return x;
}

// Plain triple loop, ascending inner index.
Eigen::MatrixXd multiply_naive_real(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const Eigen::Index n = a.rows(), k_max = a.cols(), m = b.cols();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      double acc = 0.0;
      for (Eigen::Index k = 0; k < k_max; ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  return c;
}

std::vector<int> parities(const std::vector<MultiIndex>& basis) {
  std::vector<int> p(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) p[i] = basis[i].parity();
  return p;
}

}  // namespace

OperatorMatrix position_matrix_1d(int n_max) {
  if (n_max < 1) throw ValidationError("position_matrix_1d needs n_max >= 1");
  OperatorMatrix m;
  m.basis = BasisTruncation{1, n_max};
  m.entries = position_real(n_max).cast<Complex>();
  m.flags = kHermitian | kReal;
  return m;
}

OperatorMatrix assemble_h0(const BasisTruncation& t) {
  t.validate();
  const auto basis = enumerate_basis(t);
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  OperatorMatrix m;
  m.basis = t;
  m.entries = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m.entries(i, i) = h0_energy(basis[i], t.dim);
  m.flags = kHermitian | kReal | kDiagonal;
  return m;
}

OperatorMatrix assemble_parity(const BasisTruncation& t) {
  t.validate();
  const auto basis = enumerate_basis(t);
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  OperatorMatrix m;
  m.basis = t;
  m.entries = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m.entries(i, i) = basis[i].parity();
  m.flags = kHermitian | kReal | kDiagonal;
  return m;
}

OperatorMatrix assemble_w(const BasisTruncation& t, const PolynomialPotential& w) {
  t.validate();
  if (w.dim != t.dim)
    throw DimensionMismatch("potential dimension " + std::to_string(w.dim) +
                            " does not match basis dimension " + std::to_string(t.dim));

  const auto basis = enumerate_basis(t);
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  const auto par = parities(basis);

  // Per-coordinate powers of x on the padded range [0, L + deg W]. The
  // naive products keep shared entries bitwise identical across cutoffs.
  const int padded = t.cutoff + w.degree();
  std::map<int, Eigen::MatrixXd> powers;
  powers[0] = Eigen::MatrixXd::Identity(padded + 1, padded + 1);
  powers[1] = position_real(padded);
  int max_exp = 0;
  for (const auto& mono : w.monomials)
    for (int e : mono.exponents) max_exp = std::max(max_exp, e);
  for (int a = 2; a <= max_exp; ++a)
    powers[a] = multiply_naive_real(powers[a - 1], powers[1]);

  OperatorMatrix m;
  m.basis = t;
  m.entries = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a; b < n; ++b) {
      if (par[a] == par[b]) continue;  // structural zero: W has odd degree
      double value = 0.0;
      for (const auto& mono : w.monomials) {
        double factor = mono.coefficient;
        for (int i = 0; i < t.dim; ++i)
          factor *= powers[mono.exponents[i]](basis[a].entries[i], basis[b].entries[i]);
        value += factor;
      }
      m.entries(a, b) = value;
      m.entries(b, a) = value;  // exact symmetry by construction
    }
  }
  m.flags = kHermitian | kReal | kParityOffBlock;
  return m;
}

OperatorMatrix assemble_h(const OperatorMatrix& w_matrix, Complex g) {
  const BasisTruncation& t = w_matrix.basis;
  const auto basis = enumerate_basis(t);
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  OperatorMatrix m;
  m.basis = t;
  m.entries = Eigen::MatrixXcd::Zero(n, n);
  const Complex ig = Complex(0.0, 1.0) * g;
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      if (w_matrix.entries(a, b) != 0.0)
        m.entries(a, b) = ig * w_matrix.entries(a, b).real();
  for (Eigen::Index i = 0; i < n; ++i) m.entries(i, i) += h0_energy(basis[i], t.dim);
  if (g == 0.0) m.flags = kHermitian | kReal | kDiagonal;
  return m;
}

OperatorMatrix assemble_h(const BasisTruncation& t, const PolynomialPotential& w,
                          Complex g) {
  return assemble_h(assemble_w(t, w), g);
}

OperatorMatrix assemble_q(const OperatorMatrix& w_matrix, Complex g) {
  const BasisTruncation& t = w_matrix.basis;
  const auto basis = enumerate_basis(t);
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  const auto par = parities(basis);
  OperatorMatrix m;
  m.basis = t;
  m.entries = Eigen::MatrixXcd::Zero(n, n);
  const Complex ig = Complex(0.0, 1.0) * g;
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      if (w_matrix.entries(a, b) != 0.0)
        m.entries(a, b) = double(par[a]) * (ig * w_matrix.entries(a, b).real());
  for (Eigen::Index i = 0; i < n; ++i) m.entries(i, i) += ph0_energy(basis[i], t.dim);
  // i g P W is i times a real antisymmetric matrix exactly, so Q is
  // Hermitian at finite dimension whenever g is real.
  if (g.imag() == 0.0) m.flags |= kHermitian;
  if (g == 0.0) m.flags |= kReal | kDiagonal;
  return m;
}

OperatorMatrix assemble_q(const BasisTruncation& t, const PolynomialPotential& w,
                          Complex g) {
  return assemble_q(assemble_w(t, w), g);
}

OperatorMatrix assemble_q_prime(const BasisTruncation& t, const PolynomialPotential& w,
                                Complex g) {
  const auto w_matrix = assemble_w(t, w);
  const auto basis = enumerate_basis(t);
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  const auto par = parities(basis);
  OperatorMatrix m;
  m.basis = t;
  m.entries = Eigen::MatrixXcd::Zero(n, n);
  const Complex ig = Complex(0.0, 1.0) * g;
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      if (w_matrix.entries(a, b) != 0.0)
        m.entries(a, b) = (ig * w_matrix.entries(a, b).real()) * double(par[b]);
  for (Eigen::Index i = 0; i < n; ++i) m.entries(i, i) += ph0_energy(basis[i], t.dim);
  if (g.imag() == 0.0) m.flags |= kHermitian;
  if (g == 0.0) m.flags |= kReal | kDiagonal;
  return m;
}

Eigen::MatrixXcd multiply_naive(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("non-conformable product");
  const Eigen::Index n = a.rows(), k_max = a.cols(), m = b.cols();
  Eigen::MatrixXcd c(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      Complex acc = 0.0;
      for (Eigen::Index k = 0; k < k_max; ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  return c;
}

Eigen::MatrixXcd adjoint_times_naive(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("non-conformable product");
  const Eigen::Index n = a.cols(), k_max = a.rows(), m = b.cols();
  Eigen::MatrixXcd c(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      Complex acc = 0.0;
      for (Eigen::Index k = 0; k < k_max; ++k) acc += std::conj(a(k, i)) * b(k, j);
      c(i, j) = acc;
    }
  return c;
}

double operator_norm(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.cols();
  if (n == 0) return 0.0;
  Eigen::VectorXcd v = Eigen::VectorXcd::Constant(n, Complex(1.0, 0.0));
  v.normalize();
  double sigma = 0.0;
  for (int iter = 0; iter < 100; ++iter) {
    Eigen::VectorXcd w = m * v;
    const double s = w.norm();
    if (s == 0.0) return 0.0;
    v = m.adjoint() * w;
    const double vn = v.norm();
    if (vn == 0.0) return s;
    v /= vn;
    if (iter > 3 && std::abs(s - sigma) <= 1e-12 * s) return s;
    sigma = s;
  }
  return sigma;
}

}  // namespace ptosc
