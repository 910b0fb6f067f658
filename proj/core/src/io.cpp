#include "ptosc/io.hpp"

#include <charconv>
#include <cstdio>
#include <ostream>

#include "ptosc/format.hpp"

namespace ptosc {

std::string format_double(double v) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

namespace {

std::string sig17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_matrix_dump(std::ostream& os, const OperatorMatrix& m,
                       const std::string& potential, std::complex<double> g) {
  const Eigen::Index n = m.size();
  os << "ptosc-matrix v1\n";
  os << "dim " << m.basis.dim << "\n";
  os << "cutoff " << m.basis.cutoff << "\n";
  os << "size " << n << "\n";
  os << "ordering principal-lex-v1\n";
  os << "potential " << potential << "\n";
  os << "g " << sig17(g.real()) << " " << sig17(g.imag()) << "\n";
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j) os << " ";
      os << sig17(m.entries(i, j).real()) << " " << sig17(m.entries(i, j).imag());
    }
    os << "\n";
  }
}

}  // namespace ptosc
