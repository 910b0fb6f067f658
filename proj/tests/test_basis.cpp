#include <doctest.h>

#include <set>

#include "ptosc/basis.hpp"
#include "ptosc/errors.hpp"

using namespace ptosc;

TEST_CASE("enumeration size equals the binomial count") {
  for (int d = 1; d <= 4; ++d)
    for (int L = 0; L <= 12; ++L) {
      const BasisTruncation t{d, L};
      const auto basis = enumerate_basis(t);
      CHECK(basis.size() == t.size());
      CHECK(basis.size() == binomial(L + d, d));
      std::set<std::vector<int>> unique;
      for (const auto& m : basis) unique.insert(m.entries);
      CHECK(unique.size() == basis.size());
    }
}

TEST_CASE("enumeration order is energy-major with lexicographic tie-break") {
  const auto basis = enumerate_basis(BasisTruncation{2, 1});
  REQUIRE(basis.size() == 3);
  CHECK(basis[0].entries == std::vector<int>{0, 0});
  CHECK(basis[1].entries == std::vector<int>{0, 1});
  CHECK(basis[2].entries == std::vector<int>{1, 0});

  const auto line = enumerate_basis(BasisTruncation{1, 3});
  REQUIRE(line.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(line[i].entries == std::vector<int>{i});

  CHECK(enumerate_basis(BasisTruncation{3, 2}).size() == 10);

  for (int d = 1; d <= 3; ++d) {
    const auto all = enumerate_basis(BasisTruncation{d, 6});
    for (std::size_t i = 1; i < all.size(); ++i) {
      const int lp = all[i - 1].principal(), lc = all[i].principal();
      CHECK(lp <= lc);
      if (lp == lc) CHECK(all[i - 1].entries < all[i].entries);
    }
  }
}

TEST_CASE("oscillator energies") {
  CHECK(h0_energy(MultiIndex{{0}}, 1) == 1.0);
  CHECK(h0_energy(MultiIndex{{1, 0}}, 2) == 4.0);
  CHECK(h0_energy(MultiIndex{{0, 0, 0}}, 3) == 3.0);
}

TEST_CASE("parity-signed energies") {
  CHECK(ph0_energy(MultiIndex{{0}}, 1) == 1.0);
  CHECK(ph0_energy(MultiIndex{{1}}, 1) == -3.0);
  CHECK(ph0_energy(MultiIndex{{1, 1}}, 2) == 6.0);

  for (const auto& m : enumerate_basis(BasisTruncation{3, 5})) {
    CHECK((m.parity() == 1) == (ph0_energy(m, 3) > 0));
    CHECK(std::abs(ph0_energy(m, 3)) == h0_energy(m, 3));
  }
}

TEST_CASE("degeneracy matches a brute-force count") {
  CHECK(degeneracy(7, 1) == 1);
  CHECK(degeneracy(3, 2) == 4);
  CHECK(degeneracy(2, 3) == 6);
  for (int d = 1; d <= 4; ++d)
    for (int l = 0; l <= 10; ++l) {
      std::size_t brute = 0;
      for (const auto& m : enumerate_basis(BasisTruncation{d, l}))
        if (m.principal() == l) ++brute;
      CHECK(degeneracy(l, d) == brute);
    }
}

TEST_CASE("level degeneracies sum to the basis size") {
  for (int d = 1; d <= 4; ++d)
    for (int L = 0; L <= 12; ++L) {
      std::uint64_t total = 0;
      for (int l = 0; l <= L; ++l) total += degeneracy(l, d);
      CHECK(total == BasisTruncation{d, L}.size());
    }
}

TEST_CASE("invalid truncations are rejected") {
  CHECK_THROWS_AS(enumerate_basis(BasisTruncation{0, 3}), ValidationError);
  CHECK_THROWS_AS(enumerate_basis(BasisTruncation{2, -1}), ValidationError);
  const BasisTruncation huge{40, 40};
  CHECK_THROWS_AS(huge.validate(), ValidationError);  // overflow guard
}
