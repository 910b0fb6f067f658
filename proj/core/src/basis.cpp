#include "ptosc/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ptosc/errors.hpp"

namespace ptosc {

int MultiIndex::principal() const {
  return std::accumulate(entries.begin(), entries.end(), 0);
}

int MultiIndex::parity() const { return principal() % 2 == 0 ? 1 : -1; }

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

void BasisTruncation::validate() const {
  if (dim < 1) throw ValidationError("basis dimension must be >= 1");
  if (cutoff < 0) throw ValidationError("basis cutoff must be >= 0");
  // Guard the binomial against overflow; dense assembly is hopeless long
  // before this anyway.
  const double log_size = std::lgamma(cutoff + dim + 1.0) - std::lgamma(dim + 1.0) -
                          std::lgamma(cutoff + 1.0);
  if (log_size > std::log(1e7))
    throw ValidationError("basis size C(" + std::to_string(cutoff + dim) + "," +
                          std::to_string(dim) + ") exceeds 1e7 states");
}

std::size_t BasisTruncation::size() const {
  return static_cast<std::size_t>(binomial(cutoff + dim, dim));
}

namespace {

// Appends all multi-indices with the given remaining degree, first entries
// ascending, which yields lexicographic order within a level.
void fill_level(int dim, int remaining, std::vector<int>& prefix,
                std::vector<MultiIndex>& out) {
  if (static_cast<int>(prefix.size()) == dim - 1) {
    prefix.push_back(remaining);
    out.push_back(MultiIndex{prefix});
    prefix.pop_back();
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    prefix.push_back(v);
    fill_level(dim, remaining - v, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_basis(const BasisTruncation& t) {
  t.validate();
  std::vector<MultiIndex> out;
  out.reserve(t.size());
  std::vector<int> prefix;
  prefix.reserve(t.dim);
  for (int l = 0; l <= t.cutoff; ++l) fill_level(t.dim, l, prefix, out);
  return out;
}

double h0_energy(const MultiIndex& m, int dim) { return 2.0 * m.principal() + dim; }

double ph0_energy(const MultiIndex& m, int dim) {
  return m.parity() * h0_energy(m, dim);
}

std::uint64_t degeneracy(int l, int dim) {
  if (l < 0 || dim < 1) throw ValidationError("degeneracy needs l >= 0, dim >= 1");
  return binomial(l + dim - 1, dim - 1);
}

}  // namespace ptosc
