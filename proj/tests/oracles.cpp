#include "oracles.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "ptosc/errors.hpp"
#include "ptosc/linalg.hpp"

namespace oracles {

using Complex = std::complex<double>;

ptosc::QuadratureRule gauss_hermite(int n) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = std::sqrt(k / 2.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  ptosc::QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mass = std::sqrt(std::numbers::pi);  // integral of e^{-x^2}
  for (int k = 0; k < n; ++k) {
    rule.nodes[k] = solver.eigenvalues()(k);
    const double first = solver.eigenvectors()(0, k);
    rule.weights[k] = mass * first * first;
  }
  return rule;
}

std::vector<double> hermite_orthonormal(int n_max, double x) {
  std::vector<double> p(n_max + 1);
  p[0] = std::pow(std::numbers::pi, -0.25);
  if (n_max >= 1) p[1] = std::sqrt(2.0) * x * p[0];
  for (int n = 1; n < n_max; ++n)
    p[n + 1] = std::sqrt(2.0 / (n + 1)) * x * p[n] - std::sqrt(double(n) / (n + 1)) * p[n - 1];
  return p;
}

namespace {

double w_element_recurse(const ptosc::PolynomialPotential& w,
                         const ptosc::MultiIndex& m, const ptosc::MultiIndex& n,
                         const ptosc::QuadratureRule& rule, std::vector<double>& point,
                         double factor, int coord) {
  if (coord == w.dim) return factor * ptosc::evaluate(w, point);
  double total = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    const auto values = hermite_orthonormal(
        std::max(m.entries[coord], n.entries[coord]), x);
    point[coord] = x;
    total += w_element_recurse(
        w, m, n, rule, point,
        factor * rule.weights[i] * values[m.entries[coord]] * values[n.entries[coord]],
        coord + 1);
  }
  return total;
}

}  // namespace

double w_element_quadrature(const ptosc::PolynomialPotential& w,
                            const ptosc::MultiIndex& m, const ptosc::MultiIndex& n,
                            int nodes) {
  const auto rule = gauss_hermite(nodes);
  std::vector<double> point(w.dim, 0.0);
  return w_element_recurse(w, m, n, rule, point, 1.0, 0);
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa, double b,
               double fb, double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa,
                     double b, double fb, double m, double fm, double whole,
                     double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, fa, m, fm, lm, flm);
  const double right = simpson(f, m, fm, b, fb, rm, frm);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = simpson(f, a, fa, b, fb, m, fm);
  return adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, 20);
}

std::vector<Complex> char_poly(const Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(m.rows());
  // Faddeev-LeVerrier: M_1 = A, c_{n-1} = -tr M_1; M_{k+1} = A (M_k + c I).
  std::vector<Complex> coeffs(n + 1);
  coeffs[n] = 1.0;
  Eigen::MatrixXcd mk = m;
  Complex c = -mk.trace();
  coeffs[n - 1] = c;
  for (int k = 2; k <= n; ++k) {
    mk = m * (mk + c * Eigen::MatrixXcd::Identity(n, n));
    c = -mk.trace() / double(k);
    coeffs[n - k] = c;
  }
  return coeffs;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coefficients) {
  const int degree = static_cast<int>(coefficients.size()) - 1;
  const Complex lead = coefficients[degree];
  std::vector<Complex> monic(coefficients.size());
  for (std::size_t i = 0; i < coefficients.size(); ++i) monic[i] = coefficients[i] / lead;

  const auto eval = [&](Complex z) {
    Complex acc = 0.0;
    for (int i = degree; i >= 0; --i) acc = acc * z + monic[i];
    return acc;
  };

  std::vector<Complex> roots(degree);
  const Complex seed(0.4, 0.9);  // standard Durand-Kerner start
  Complex p = 1.0;
  for (int i = 0; i < degree; ++i) {
    p *= seed;
    roots[i] = p;
  }
  for (int iter = 0; iter < 500; ++iter) {
    double worst = 0.0;
    for (int i = 0; i < degree; ++i) {
      Complex denom = 1.0;
      for (int j = 0; j < degree; ++j)
        if (j != i) denom *= roots[i] - roots[j];
      const Complex delta = eval(roots[i]) / denom;
      roots[i] -= delta;
      worst = std::max(worst, std::abs(delta));
    }
    if (worst < 1e-14) break;
  }
  return roots;
}

double q_branch(const ptosc::BasisTruncation& t, const ptosc::PolynomialPotential& w,
                double g, const ptosc::MultiIndex& level) {
  const auto basis = ptosc::enumerate_basis(t);
  Eigen::Index level_index = -1;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(basis.size()); ++i)
    if (basis[i] == level) level_index = i;
  if (level_index < 0) throw ptosc::ValidationError("level outside basis");
  const auto decomposition = ptosc::eig_hermitian(ptosc::assemble_q(t, w, g), true);
  Eigen::Index best = 0;
  double best_overlap = -1.0;
  for (Eigen::Index k = 0; k < decomposition.vectors->cols(); ++k) {
    const double overlap = std::abs((*decomposition.vectors)(level_index, k));
    if (overlap > best_overlap) {
      best_overlap = overlap;
      best = k;
    }
  }
  return decomposition.values[best].real();
}

EvenFit fd_even_fit(const std::function<double(double)>& branch, double h) {
  const double f0 = branch(0.0);
  Eigen::MatrixXd a(5, 5);
  Eigen::VectorXd y(5);
  for (int j = 1; j <= 5; ++j) {
    const double u = (j * h) * (j * h);
    double p = 1.0;
    for (int c = 0; c < 5; ++c) {
      p *= u;
      a(j - 1, c) = p;  // u^{c+1}
    }
    y(j - 1) = branch(j * h) - f0;
  }
  const Eigen::VectorXd coeffs = a.fullPivLu().solve(y);
  return EvenFit{coeffs(0), coeffs(1)};
}

}  // namespace oracles
