#include "ptosc/borel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ptosc/errors.hpp"
#include "ptosc/quadrature.hpp"

namespace ptosc {

using Complex = std::complex<double>;

namespace {

template <typename Scalar>
Scalar horner(const std::vector<double>& coeffs, Scalar t) {
  Scalar acc = Scalar(0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + Scalar(*it);
  return acc;
}

}  // namespace

double PadeApproximant::operator()(double t) const {
  return horner(numerator, t) / horner(denominator, t);
}

Complex PadeApproximant::operator()(Complex t) const {
  return horner(numerator, t) / horner(denominator, t);
}

std::vector<Complex> PadeApproximant::poles() const {
  std::vector<double> den = denominator;
  while (den.size() > 1 && den.back() == 0.0) den.pop_back();
  const int deg = static_cast<int>(den.size()) - 1;
  if (deg < 1) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -den[i] / den[deg];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("pole solve did not converge");
  std::vector<Complex> roots(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + deg);
  std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

std::vector<double> borel_transform(std::span<const double> coefficients, double q) {
  if (q <= 0.0) throw ValidationError("Borel-Leroy order q must be positive");
  if (coefficients.size() < 2)
    throw ValidationError("Borel transform needs at least two coefficients");
  std::vector<double> b(coefficients.size());
  for (std::size_t s = 0; s < coefficients.size(); ++s) {
    const double arg = q * static_cast<double>(s) + 1.0;
    if (arg < 170.0) {
      b[s] = coefficients[s] / std::tgamma(arg);
    } else {
      const double sign = coefficients[s] < 0 ? -1.0 : 1.0;
      b[s] = coefficients[s] == 0.0
                 ? 0.0
                 : sign * std::exp(std::log(std::abs(coefficients[s])) - std::lgamma(arg));
    }
  }
  return b;
}

PadeApproximant pade_continue(std::span<const double> b, int m, int mp) {
  if (m < 0 || mp < 0) throw ValidationError("Pade degrees must be >= 0");
  if (m + mp + 1 > static_cast<int>(b.size()))
    throw ValidationError("Pade degrees (" + std::to_string(m) + "," + std::to_string(mp) +
                          ") need " + std::to_string(m + mp + 1) + " coefficients, have " +
                          std::to_string(b.size()));
  bool degraded = false;
  while (true) {
    if (mp == 0) {
      PadeApproximant p;
      p.numerator.assign(b.begin(), b.begin() + m + 1);
      p.denominator = {1.0};
      p.degraded = degraded;
      return p;
    }
    // Denominator from the linear Toeplitz system
    //   sum_{j=1..mp} q_j b_{m+k-j} = -b_{m+k},  k = 1..mp.
    Eigen::MatrixXd a(mp, mp);
    Eigen::VectorXd rhs(mp);
    for (int k = 1; k <= mp; ++k) {
      for (int j = 1; j <= mp; ++j) {
        const int idx = m + k - j;
        a(k - 1, j - 1) = idx >= 0 ? b[idx] : 0.0;
      }
      rhs(k - 1) = -b[m + k];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible()) {
      // Near-singular table: retreat one step along the diagonal.
      degraded = true;
      m = std::max(0, m - 1);
      --mp;
      continue;
    }
    const Eigen::VectorXd den_tail = lu.solve(rhs);
    PadeApproximant p;
    p.denominator.resize(mp + 1);
    p.denominator[0] = 1.0;
    for (int j = 1; j <= mp; ++j) p.denominator[j] = den_tail(j - 1);
    p.numerator.resize(m + 1);
    for (int i = 0; i <= m; ++i) {
      double acc = b[i];
      for (int j = 1; j <= std::min(i, mp); ++j) acc += p.denominator[j] * b[i - j];
      p.numerator[i] = acc;
    }
    p.degraded = degraded;
    return p;
  }
}

BorelResult borel_sum(const PowerSeries& series, double g, double q, int quadrature_nodes,
                      std::optional<std::pair<int, int>> pade_degrees) {
  if (g < 0.0) throw ValidationError("borel_sum needs g >= 0");
  if (quadrature_nodes < 1) throw ValidationError("need at least one quadrature node");

  const auto b = borel_transform(series.coefficients, q);
  const int order = static_cast<int>(b.size()) - 1;
  int m = pade_degrees ? pade_degrees->first : order / 2;
  int mp = pade_degrees ? pade_degrees->second : order / 2;
  const auto pade = pade_continue(b, m, mp);

  const auto rule = gauss_laguerre(quadrature_nodes);
  double value = 0.0;
  for (int i = 0; i < quadrature_nodes; ++i)
    value += rule.weights[i] * pade(g * std::pow(rule.nodes[i], q));

  BorelResult result;
  result.g = g;
  result.q = q;
  result.value = value;
  result.pade_m = pade.num_degree();
  result.pade_mp = pade.den_degree();
  result.quadrature_nodes = quadrature_nodes;
  result.continuation_poles = pade.poles();
  result.pade_degraded = pade.degraded;
  for (const auto& pole : result.continuation_poles) {
    const double mag = std::abs(pole);
    if (mag > 0.0 && pole.real() > 0.0 && std::abs(pole.imag()) <= 1e-3 * mag) {
      result.pole_warning = true;
      break;
    }
  }
  return result;
}

}  // namespace ptosc
