#pragma once

#include <cstdint>
#include <vector>

namespace ptosc {

// Multi-index (l1,...,ld) labelling a d-dimensional oscillator eigenfunction.
struct MultiIndex {
  std::vector<int> entries;

  int principal() const;  // l = l1 + ... + ld
  int parity() const;     // (-1)^l

  bool operator==(const MultiIndex&) const = default;
};

// The set of all multi-indices with principal quantum number <= cutoff.
struct BasisTruncation {
  int dim = 1;     // spatial dimension d >= 1
  int cutoff = 0;  // maximal principal quantum number L >= 0

  std::size_t size() const;  // C(L+d, d)
  void validate() const;

  bool operator==(const BasisTruncation&) const = default;
};

std::uint64_t binomial(int n, int k);

// Canonical enumeration: ascending principal quantum number, ties broken
// lexicographically on (l1,...,ld). This order is the contract for every
// matrix and file the toolkit produces.
std::vector<MultiIndex> enumerate_basis(const BasisTruncation& t);

double h0_energy(const MultiIndex& m, int dim);   // 2l + d
double ph0_energy(const MultiIndex& m, int dim);  // parity * (2l + d)

// Exact number of multi-indices with principal quantum number l.
std::uint64_t degeneracy(int l, int dim);

}  // namespace ptosc
