#pragma once

#include <vector>

#include "ptosc/basis.hpp"
#include "ptosc/potential.hpp"

namespace ptosc {

// Rayleigh-Schrodinger series mu_0..mu_N of the Q(g) eigenvalue branch
// attached to an unperturbed level of P H0.
struct PowerSeries {
  MultiIndex level;
  BasisTruncation truncation;
  std::vector<double> coefficients;  // mu_s, s = 0..N
  std::vector<double> stability;     // |mu_s(L) - mu_s(L-2)| per coefficient
  std::vector<double> imag_defect;   // |Im mu_s| before the real part is kept
};

// Nondegenerate recursion for Q(g) = P H0 + g (i P W), with intermediate
// normalization <psi_0, psi_s> = 0. The level's P H0 eigenvalue must be
// simple within the truncated basis (throws DegenerateLevel otherwise) and
// the recursion must stay interior: L >= principal + N (2K+1) + 2 (throws
// TruncationTooSmall).
PowerSeries rs_coefficients(const BasisTruncation& t, const PolynomialPotential& w,
                            const MultiIndex& level, int order);

struct GrowthFit {
  double amplitude = 0.0;  // A
  double base = 0.0;       // C
  double order = 0.0;      // fitted q in |mu_s| ~ A C^s Gamma(q s)
};

// Least-squares fit of log|mu_s| against log A + s log C + log Gamma(q s)
// over the nonvanishing coefficients with s >= 1. Needs at least 8 orders.
GrowthFit coefficient_growth_fit(const PowerSeries& series);

}  // namespace ptosc
