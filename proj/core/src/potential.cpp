#include "ptosc/potential.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "ptosc/errors.hpp"
#include "ptosc/format.hpp"

namespace ptosc {

int Monomial::degree() const {
  return std::accumulate(exponents.begin(), exponents.end(), 0);
}

namespace {

struct RawTerm {
  double coefficient = 1.0;
  std::map<int, int> exponents;  // 1-based variable index -> exponent
};

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return text[pos];
  }
  bool accept(char c) {
    if (!eof() && peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  double parse_number() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    bool any = pos > start;
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      const std::size_t frac = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      any = any || pos > frac;
    }
    if (!any) throw ParseError("expected a number", start);
    return std::stod(std::string(text.substr(start, pos - start)));
  }

  int parse_positive_int(const char* what) {
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw ParseError(std::string("expected ") + what, start);
    long v = std::stol(std::string(text.substr(start, pos - start)));
    if (v < 1 || v > 1'000'000) throw ParseError(std::string("bad ") + what, start);
    return static_cast<int>(v);
  }

  // factor := number | 'x' index ['^' exponent]
  void parse_factor(RawTerm& term) {
    skip_ws();
    if (pos >= text.size()) throw ParseError("expected a factor", pos);
    const char c = text[pos];
    if (c == 'x' || c == 'X') {
      ++pos;
      const int index = parse_positive_int("variable index");
      int exponent = 1;
      skip_ws();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        exponent = parse_positive_int("exponent");
      }
      term.exponents[index] += exponent;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      term.coefficient *= parse_number();
    } else {
      throw ParseError("expected a coefficient or x<k>", pos);
    }
  }

  RawTerm parse_term() {
    RawTerm term;
    parse_factor(term);
    while (accept('*')) parse_factor(term);
    return term;
  }

  std::vector<RawTerm> parse_expression() {
    std::vector<RawTerm> terms;
    double sign = 1.0;
    if (accept('+')) sign = 1.0;
    else if (accept('-')) sign = -1.0;
    while (true) {
      if (eof()) throw ParseError("expected a term", pos);
      RawTerm term = parse_term();
      term.coefficient *= sign;
      terms.push_back(std::move(term));
      if (eof()) break;
      if (accept('+')) sign = 1.0;
      else if (accept('-')) sign = -1.0;
      else throw ParseError("expected '+' or '-'", pos);
    }
    return terms;
  }
};

bool lex_greater(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

PolynomialPotential make_potential(int dim, std::vector<Monomial> monomials) {
  if (dim < 1) throw ValidationError("potential dimension must be >= 1");
  // Merge like terms, dropping exact zeros.
  std::map<std::vector<int>, double> merged;
  for (const auto& m : monomials) {
    if (static_cast<int>(m.exponents.size()) != dim)
      throw ValidationError("monomial exponent count does not match dimension");
    for (int e : m.exponents)
      if (e < 0) throw ValidationError("negative exponent");
    if (!std::isfinite(m.coefficient)) throw ValidationError("non-finite coefficient");
    merged[m.exponents] += m.coefficient;
  }
  std::vector<Monomial> simplified;
  for (auto& [exps, coeff] : merged)
    if (coeff != 0.0) simplified.push_back(Monomial{exps, coeff});
  if (simplified.empty()) throw ValidationError("potential is identically zero");

  const int deg = simplified.front().degree();
  for (const auto& m : simplified)
    if (m.degree() != deg)
      throw ValidationError("potential is not homogeneous: mixed degrees " +
                            std::to_string(deg) + " and " + std::to_string(m.degree()));
  if (deg % 2 == 0) throw ValidationError("potential degree must be odd");
  if (deg < 3) throw ValidationError("potential degree must be >= 3");

  std::sort(simplified.begin(), simplified.end(),
            [](const Monomial& a, const Monomial& b) {
              return lex_greater(a.exponents, b.exponents);
            });

  PolynomialPotential w;
  w.dim = dim;
  w.monomials = std::move(simplified);
  w.K = (deg - 1) / 2;
  return w;
}

PolynomialPotential parse_potential(std::string_view text, int dim) {
  if (dim < 1) throw ValidationError("potential dimension must be >= 1");
  Parser parser{text};
  auto terms = parser.parse_expression();

  std::vector<Monomial> monomials;
  for (const auto& term : terms) {
    Monomial m;
    m.exponents.assign(dim, 0);
    m.coefficient = term.coefficient;
    for (const auto& [index, exponent] : term.exponents) {
      if (index > dim)
        throw ValidationError("variable x" + std::to_string(index) +
                              " exceeds dimension " + std::to_string(dim));
      m.exponents[index - 1] += exponent;
    }
    monomials.push_back(std::move(m));
  }
  return make_potential(dim, std::move(monomials));
}

double evaluate(const PolynomialPotential& w, std::span<const double> x) {
  if (static_cast<int>(x.size()) != w.dim)
    throw DimensionMismatch("evaluation point dimension mismatch");
  double total = 0.0;
  for (const auto& m : w.monomials) {
    double term = m.coefficient;
    for (int i = 0; i < w.dim; ++i)
      for (int p = 0; p < m.exponents[i]; ++p) term *= x[i];
    total += term;
  }
  return total;
}

std::string to_string(const PolynomialPotential& w) {
  std::ostringstream os;
  bool first = true;
  for (const auto& m : w.monomials) {
    const double c = m.coefficient;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    const double mag = std::abs(c);
    bool wrote_factor = false;
    if (mag != 1.0) {
      os << format_double(mag);
      wrote_factor = true;
    }
    for (int i = 0; i < w.dim; ++i) {
      if (m.exponents[i] == 0) continue;
      if (wrote_factor) os << "*";
      os << "x" << (i + 1);
      if (m.exponents[i] > 1) os << "^" << m.exponents[i];
      wrote_factor = true;
    }
    if (!wrote_factor) os << format_double(mag);  // degree-0 monomial (unreachable)
  }
  return os.str();
}

}  // namespace ptosc
