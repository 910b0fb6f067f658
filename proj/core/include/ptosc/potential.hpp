#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ptosc {

struct Monomial {
  std::vector<int> exponents;  // one exponent per coordinate
  double coefficient = 0.0;

  int degree() const;

  bool operator==(const Monomial&) const = default;
};

// Odd homogeneous real polynomial W of degree 2K+1, K >= 1. Instances are
// always validated and simplified: like terms merged, zero terms dropped,
// monomials in canonical (lexicographically descending exponent) order.
struct PolynomialPotential {
  int dim = 1;
  std::vector<Monomial> monomials;
  int K = 0;

  int degree() const { return 2 * K + 1; }

  bool operator==(const PolynomialPotential&) const = default;
};

// Builds a validated potential from raw monomials.
PolynomialPotential make_potential(int dim, std::vector<Monomial> monomials);

// Parses a sum of signed terms `c * x1^a1 * ... * xd^ad` (coefficient and
// exponents optional, whitespace-insensitive). Throws ParseError on bad
// syntax and ValidationError when the result is not an odd homogeneous
// polynomial of degree >= 3 over x1..xd.
PolynomialPotential parse_potential(std::string_view text, int dim);

double evaluate(const PolynomialPotential& w, std::span<const double> x);

std::string to_string(const PolynomialPotential& w);

}  // namespace ptosc
