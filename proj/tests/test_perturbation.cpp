#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ptosc/errors.hpp"
#include "ptosc/perturbation.hpp"

using namespace ptosc;

namespace {

PowerSeries ground_series(int order, int cutoff) {
  return rs_coefficients(BasisTruncation{1, cutoff}, parse_potential("x1^3", 1),
                         MultiIndex{{0}}, order);
}

}  // namespace

TEST_CASE("leading coefficient is the unperturbed eigenvalue") {
  const auto series = ground_series(4, 20);
  CHECK(series.coefficients[0] == 1.0);

  const auto excited = rs_coefficients(BasisTruncation{1, 30}, parse_potential("x1^3", 1),
                                       MultiIndex{{3}}, 4);
  CHECK(excited.coefficients[0] == -7.0);
}

TEST_CASE("second coefficient matches its closed form") {
  // mu_2 = |W_01|^2/4 + |W_03|^2/8 = 9/32 + 3/32 = 3/8 for W = x^3.
  const auto series = ground_series(4, 20);
  CHECK(series.coefficients[2] == doctest::Approx(0.375).epsilon(1e-13));
}

TEST_CASE("odd coefficients vanish") {
  const auto series = ground_series(9, 40);
  for (int s = 1; s < 10; s += 2) {
    const double even_neighbour = std::abs(series.coefficients[s - 1]);
    CHECK(std::abs(series.coefficients[s]) <=
          std::max({series.stability[s], 1e-10 * even_neighbour, 1e-12}));
  }
}

TEST_CASE("coefficients are real") {
  const auto series = ground_series(10, 40);
  for (std::size_t s = 0; s < series.coefficients.size(); ++s)
    CHECK(series.imag_defect[s] <=
          1e-12 * (std::abs(series.coefficients[s]) + 1.0));
}

TEST_CASE("coefficients are cutoff-independent once interior") {
  const auto series = ground_series(8, 30);
  for (double s : series.stability) CHECK(s <= 1e-12);

  const auto wide = ground_series(8, 40);
  for (int s = 0; s <= 8; ++s)
    CHECK(series.coefficients[s] ==
          doctest::Approx(wide.coefficients[s]).epsilon(1e-12));
}

TEST_CASE("mu_2 against the symmetric finite-difference oracle") {
  const auto series = ground_series(4, 20);
  const auto w = parse_potential("x1^3", 1);
  const BasisTruncation t{1, 50};
  const MultiIndex level{{0}};
  const double h = 1e-2;
  const auto branch = [&](double g) { return oracles::q_branch(t, w, g, level); };

  // mu_1 = 0: the branch is even, so the symmetric difference vanishes.
  const double mu1 = (branch(h) - branch(-h)) / (2.0 * h);
  CHECK(std::abs(mu1) <= 1e-9);

  const double second = (-branch(2 * h) + 16.0 * branch(h) - 30.0 * branch(0.0) +
                         16.0 * branch(-h) - branch(-2 * h)) /
                        (12.0 * h * h);
  CHECK(series.coefficients[2] == doctest::Approx(second / 2.0).epsilon(1e-6));
}

TEST_CASE("classic 4th-difference reproduces mu_4 with its mu_6, mu_8 contamination") {
  // The plain stencil estimate is mu_4 + 5 mu_6 h^2 + 21 mu_8 h^4 + O(h^6);
  // matching it against the recursion pins mu_4, mu_6 and mu_8 at once.
  const auto series = ground_series(8, 30);
  const auto w = parse_potential("x1^3", 1);
  const BasisTruncation t{1, 50};
  const MultiIndex level{{0}};
  const double h = 1e-2;
  const auto branch = [&](double g) { return oracles::q_branch(t, w, g, level); };

  const double fd4 = (branch(-2 * h) - 4.0 * branch(-h) + 6.0 * branch(0.0) -
                      4.0 * branch(h) + branch(2 * h)) /
                     (h * h * h * h) / 24.0;
  const double model = series.coefficients[4] + 5.0 * series.coefficients[6] * h * h +
                       21.0 * series.coefficients[8] * h * h * h * h;
  CHECK(fd4 == doctest::Approx(model).epsilon(1e-5));
}

TEST_CASE("five-sample divided differences recover mu_2 and mu_4 sharply") {
  const auto series = ground_series(4, 20);
  const auto w = parse_potential("x1^3", 1);
  const BasisTruncation t{1, 50};
  const MultiIndex level{{0}};
  const auto branch = [&](double g) { return oracles::q_branch(t, w, g, level); };
  const auto fit = oracles::fd_even_fit(branch, 1e-2);
  CHECK(fit.mu2 == doctest::Approx(series.coefficients[2]).epsilon(1e-8));
  CHECK(fit.mu4 == doctest::Approx(series.coefficients[4]).epsilon(1e-6));
}

TEST_CASE("degenerate levels are rejected") {
  const auto w = parse_potential("x1^2*x2", 2);
  CHECK_THROWS_AS(
      rs_coefficients(BasisTruncation{2, 20}, w, MultiIndex{{0, 1}}, 2),
      DegenerateLevel);
  // The d=2 ground state is simple and goes through.
  const auto series = rs_coefficients(BasisTruncation{2, 12}, w, MultiIndex{{0, 0}}, 2);
  CHECK(series.coefficients[0] == 2.0);
}

TEST_CASE("insufficient cutoffs are rejected") {
  CHECK_THROWS_AS(ground_series(8, 20), TruncationTooSmall);
  CHECK_THROWS_AS(rs_coefficients(BasisTruncation{1, 10}, parse_potential("x1^3", 1),
                                  MultiIndex{{20}}, 1),
                  TruncationTooSmall);
}

TEST_CASE("growth fit recovers a planted Gamma(s/2) law") {
  PowerSeries planted;
  planted.level = MultiIndex{{0}};
  planted.truncation = BasisTruncation{1, 0};
  planted.coefficients.resize(21);
  planted.coefficients[0] = 1.0;
  for (int s = 1; s <= 20; ++s) planted.coefficients[s] = std::tgamma(s / 2.0);
  const auto fit = coefficient_growth_fit(planted);
  CHECK(fit.order == doctest::Approx(0.5).epsilon(0.10));
}

TEST_CASE("growth fit reports no factorial growth for a geometric series") {
  PowerSeries planted;
  planted.coefficients.resize(21);
  for (int s = 0; s <= 20; ++s) planted.coefficients[s] = std::pow(2.0, s);
  const auto fit = coefficient_growth_fit(planted);
  CHECK(fit.order <= 0.05);
}

TEST_CASE("growth fit on the cubic ground series is near q = 1/2") {
  const auto series = ground_series(20, 64);
  const auto fit = coefficient_growth_fit(series);
  CHECK(fit.order == doctest::Approx(0.5).epsilon(0.25));
}

TEST_CASE("growth fit needs enough orders") {
  PowerSeries short_series;
  short_series.coefficients.assign(8, 1.0);  // orders 0..7
  CHECK_THROWS_AS(coefficient_growth_fit(short_series), InsufficientOrders);
}
