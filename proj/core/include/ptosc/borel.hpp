#pragma once

#include <complex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ptosc/perturbation.hpp"

namespace ptosc {

// Rational interpolant P_m / Q_mp with Q(0) = 1.
struct PadeApproximant {
  std::vector<double> numerator;    // p_0..p_m
  std::vector<double> denominator;  // 1, q_1..q_mp
  bool degraded = false;            // degrees were lowered after a singular table

  int num_degree() const { return static_cast<int>(numerator.size()) - 1; }
  int den_degree() const { return static_cast<int>(denominator.size()) - 1; }

  double operator()(double t) const;
  std::complex<double> operator()(std::complex<double> t) const;

  // Zeros of the denominator, sorted by (Re, Im).
  std::vector<std::complex<double>> poles() const;
};

// Borel-Leroy transform of order q: b_s = mu_s / Gamma(q s + 1). Together
// with the Laplace integral in borel_sum this inverts the series term by
// term: Gauss-Laguerre integrates b_s g^s u^{q s} e^{-u} to b_s g^s Gamma(qs+1).
std::vector<double> borel_transform(std::span<const double> coefficients, double q);

// Rational continuation matching b_0..b_{m+mp}. A singular denominator
// system falls back to (m-1, mp-1) and marks the result degraded.
PadeApproximant pade_continue(std::span<const double> b, int m, int mp);

struct BorelResult {
  double g = 0.0;
  double q = 0.0;
  double value = 0.0;
  int pade_m = 0;
  int pade_mp = 0;
  int quadrature_nodes = 0;
  std::vector<std::complex<double>> continuation_poles;
  // A pole lies within 1e-3 relative distance of the positive real axis in
  // the Borel variable: possible summability breakdown, value still returned.
  bool pole_warning = false;
  bool pade_degraded = false;
};

// mu(g) = integral_0^inf mu_B(g u^q) e^{-u} du, evaluated by Gauss-Laguerre
// quadrature with mu_B continued via pade_continue. Default degrees are the
// near-diagonal (N/2, N/2).
BorelResult borel_sum(const PowerSeries& series, double g, double q, int quadrature_nodes,
                      std::optional<std::pair<int, int>> pade_degrees = std::nullopt);

}  // namespace ptosc
