#include "ptosc/perturbation.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "ptosc/errors.hpp"
#include "ptosc/operators.hpp"

namespace ptosc {

using Complex = std::complex<double>;

namespace {

std::vector<Complex> rs_at_cutoff(const BasisTruncation& t, const PolynomialPotential& w,
                                  const MultiIndex& level, int order) {
  const auto basis = enumerate_basis(t);
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());

  Eigen::Index level_index = -1;
  for (Eigen::Index i = 0; i < n; ++i)
    if (basis[i] == level) {
      level_index = i;
      break;
    }
  if (level_index < 0) throw TruncationTooSmall("level lies outside the basis");

  Eigen::VectorXd nu(n);
  for (Eigen::Index i = 0; i < n; ++i) nu(i) = ph0_energy(basis[i], t.dim);

  // The unperturbed eigenvalue must be simple in the truncated basis; the
  // +-(2l+d) values are exact integers so equality is exact.
  int multiplicity = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (nu(i) == nu(level_index)) ++multiplicity;
  if (multiplicity != 1)
    throw DegenerateLevel("unperturbed level has multiplicity " +
                          std::to_string(multiplicity));

  // Q(g) = Q0 + g V with Q0 = P H0 and V = i P W (Hermitian).
  const Eigen::MatrixXd w_real = assemble_w(t, w).entries.real();
  Eigen::VectorXd signs(n);
  for (Eigen::Index i = 0; i < n; ++i) signs(i) = basis[i].parity();

  const auto apply_v = [&](const Eigen::VectorXcd& x) -> Eigen::VectorXcd {
    Eigen::VectorXcd y = w_real * x;
    for (Eigen::Index i = 0; i < n; ++i) y(i) *= Complex(0.0, signs(i));
    return y;
  };

  // Reduced resolvent of Q0 at the level: diagonal, zero on the level itself.
  Eigen::VectorXd reduced(n);
  for (Eigen::Index i = 0; i < n; ++i)
    reduced(i) = (i == level_index) ? 0.0 : 1.0 / (nu(i) - nu(level_index));

  std::vector<Complex> mu(order + 1, Complex(0.0, 0.0));
  std::vector<Eigen::VectorXcd> psi(order + 1, Eigen::VectorXcd::Zero(n));
  psi[0](level_index) = 1.0;
  mu[0] = nu(level_index);

  for (int s = 1; s <= order; ++s) {
    const Eigen::VectorXcd v_prev = apply_v(psi[s - 1]);
    // mu_s = <psi_0, V psi_{s-1}> - sum_j mu_j <psi_0, psi_{s-j}>; the sum
    // vanishes under intermediate normalization but is kept for clarity.
    Complex mu_s = v_prev(level_index);
    for (int j = 1; j <= s - 1; ++j) mu_s -= mu[j] * psi[s - j](level_index);
    mu[s] = mu_s;

    Eigen::VectorXcd rhs = -v_prev;
    for (int j = 1; j <= s; ++j) rhs += mu[j] * psi[s - j];
    Eigen::VectorXcd next(n);
    for (Eigen::Index i = 0; i < n; ++i) next(i) = rhs(i) * reduced(i);
    next(level_index) = 0.0;  // intermediate normalization
    psi[s] = next;
  }
  return mu;
}

}  // namespace

PowerSeries rs_coefficients(const BasisTruncation& t, const PolynomialPotential& w,
                            const MultiIndex& level, int order) {
  t.validate();
  if (order < 1) throw ValidationError("series order must be >= 1");
  if (static_cast<int>(level.entries.size()) != t.dim)
    throw DimensionMismatch("level dimension does not match basis");
  for (int e : level.entries)
    if (e < 0) throw ValidationError("level entries must be >= 0");
  if (w.dim != t.dim) throw DimensionMismatch("potential dimension mismatch");

  const int required = level.principal() + order * w.degree() + 2;
  if (t.cutoff < required)
    throw TruncationTooSmall("cutoff " + std::to_string(t.cutoff) +
                             " too small for order " + std::to_string(order) +
                             "; need L >= " + std::to_string(required));

  const auto mu_full = rs_at_cutoff(t, w, level, order);
  const auto mu_lower =
      rs_at_cutoff(BasisTruncation{t.dim, t.cutoff - 2}, w, level, order);

  PowerSeries series;
  series.level = level;
  series.truncation = t;
  series.coefficients.resize(order + 1);
  series.stability.resize(order + 1);
  series.imag_defect.resize(order + 1);
  for (int s = 0; s <= order; ++s) {
    series.coefficients[s] = mu_full[s].real();
    series.stability[s] = std::abs(mu_full[s] - mu_lower[s]);
    series.imag_defect[s] = std::abs(mu_full[s].imag());
  }
  return series;
}

namespace {

// Sum of squared residuals of log|mu_s| - lgamma(q s) against a + c s,
// minimized over (a, c) in closed form.
double growth_sse(double q, const std::vector<std::pair<double, double>>& pts,
                  double* a_out = nullptr, double* c_out = nullptr) {
  const double n = static_cast<double>(pts.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [s, logmu] : pts) {
    const double y = logmu - std::lgamma(q * s);
    sx += s;
    sy += y;
    sxx += s * s;
    sxy += s * y;
  }
  const double det = n * sxx - sx * sx;
  const double c = (n * sxy - sx * sy) / det;
  const double a = (sy - c * sx) / n;
  double sse = 0;
  for (const auto& [s, logmu] : pts) {
    const double r = logmu - std::lgamma(q * s) - a - c * s;
    sse += r * r;
  }
  if (a_out) *a_out = a;
  if (c_out) *c_out = c;
  return sse;
}

}  // namespace

GrowthFit coefficient_growth_fit(const PowerSeries& series) {
  const int order = static_cast<int>(series.coefficients.size()) - 1;
  if (order < 8) throw InsufficientOrders("growth fit needs at least 8 orders");

  std::vector<std::pair<double, double>> pts;
  for (int s = 1; s <= order; ++s) {
    const double mag = std::abs(series.coefficients[s]);
    if (mag > 1e-290) pts.emplace_back(double(s), std::log(mag));
  }
  if (pts.size() < 4)
    throw InsufficientOrders("too few nonvanishing coefficients for a growth fit");

  // Coarse grid in q, then golden-section refinement.
  const double q_lo = 1e-3, q_hi = 3.0;
  double best_q = q_lo, best_sse = growth_sse(q_lo, pts);
  const int grid = 600;
  for (int i = 1; i <= grid; ++i) {
    const double q = q_lo + (q_hi - q_lo) * i / grid;
    const double sse = growth_sse(q, pts);
    if (sse < best_sse) {
      best_sse = sse;
      best_q = q;
    }
  }
  const double step = (q_hi - q_lo) / grid;
  double lo = std::max(q_lo, best_q - step), hi = std::min(q_hi, best_q + step);
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - ratio * (hi - lo), x2 = lo + ratio * (hi - lo);
  double f1 = growth_sse(x1, pts), f2 = growth_sse(x2, pts);
  for (int i = 0; i < 80; ++i) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = growth_sse(x1, pts);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = growth_sse(x2, pts);
    }
  }
  const double q = 0.5 * (lo + hi);
  double a = 0, c = 0;
  growth_sse(q, pts, &a, &c);
  return GrowthFit{std::exp(a), std::exp(c), q};
}

}  // namespace ptosc
