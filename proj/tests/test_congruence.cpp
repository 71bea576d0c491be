#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "builders.hpp"
#include "oracles.hpp"
#include "testutil.hpp"
#include "uag/congruence.hpp"
#include "uag/error.hpp"

using namespace uag;
using namespace uag::testing;

namespace {

// All partitions of {0..n-1} as restricted-growth block assignments.
std::vector<std::vector<int>> all_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> rg(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int i, int maxblock) -> void {
    if (i == n) {
      out.push_back(rg);
      return;
    }
    for (int b = 0; b <= maxblock + 1; ++b) {
      rg[static_cast<std::size_t>(i)] = b;
      self(self, i + 1, std::max(maxblock, b));
    }
  };
  rec(rec, 0, -1);
  return out;
}

}  // namespace

TEST_CASE("diagonal, all_pairs, and canonicalization") {
  Congruence d = Congruence::diagonal(4);
  CHECK(d.block_count() == 4);
  CHECK(d.block_of == std::vector<int>{0, 1, 2, 3});
  Congruence a = Congruence::all_pairs(4);
  CHECK(a.block_count() == 1);
  CHECK(a.block_of == std::vector<int>{0, 0, 0, 0});

  Congruence c = Congruence::from_classes({5, 7, 5, 9});
  CHECK(c.carrier == 4);
  CHECK(c.block_of == std::vector<int>{0, 1, 0, 2});
  CHECK(c.block_list() == std::vector<std::vector<int>>{{0, 2}, {1}, {3}});
  CHECK(c.related(0, 2));
  CHECK_FALSE(c.related(0, 1));
}

TEST_CASE("refines orders the partition lattice") {
  Congruence d = Congruence::diagonal(4);
  Congruence mid = Congruence::from_classes({0, 1, 0, 1});
  Congruence a = Congruence::all_pairs(4);
  CHECK(refines(d, mid));
  CHECK(refines(mid, a));
  CHECK(refines(d, a));
  CHECK_FALSE(refines(mid, d));
  CHECK(refines(mid, mid));
  Congruence other = Congruence::from_classes({0, 0, 1, 1});
  CHECK_FALSE(refines(mid, other));
  CHECK_FALSE(refines(other, mid));
}

TEST_CASE("congruence_compatible on Z4") {
  std::string witness;
  CHECK(congruence_compatible(zmod(4), Congruence::from_classes({0, 1, 0, 1})));
  CHECK_FALSE(congruence_compatible(zmod(4), Congruence::from_classes({0, 0, 1, 2}), &witness));
  CHECK(witness.find("add") != std::string::npos);
}

TEST_CASE("congruence_generated: frozen cases") {
  CHECK(congruence_generated(zmod(4), {}) == Congruence::diagonal(4));
  CHECK(congruence_generated(zmod(4), {{0, 2}}) == Congruence::from_classes({0, 1, 0, 1}));
  CHECK(congruence_generated(zmod(4), {{0, 1}}) == Congruence::all_pairs(4));
  CHECK(congruence_generated(klein(), {{0, 1}}) == Congruence::from_classes({0, 0, 1, 1}));
}

TEST_CASE("congruence_generated rejects out-of-range pairs") {
  CHECK(error_code([&] { congruence_generated(zmod(4), {{0, 7}}); }) == "carrier-mismatch");
}

TEST_CASE("congruence_generated agrees with the naive oracle on random algebras") {
  Signature sig{{{"f", 2}, {"g", 1}}, {"c"}};
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    FiniteAlgebra a = random_algebra(sig, 2 + static_cast<int>(seed % 4), seed);
    std::mt19937_64 rng(seed * 77);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < static_cast<int>(rng() % 3) + 1; ++i) {
      int x = static_cast<int>(rng() % static_cast<std::uint64_t>(a.size));
      int y = static_cast<int>(rng() % static_cast<std::uint64_t>(a.size));
      pairs.emplace_back(x, y);
    }
    CHECK(congruence_generated(a, pairs) == naive_congruence_generated(a, pairs));
  }
}

TEST_CASE("is_a_congruence never lets distinct A-images share a block") {
  FiniteAlgebra a = zmod_with(2, {{"a0", 0}, {"a1", 1}});
  FiniteAlgebra b4 = over(zmod_with(4, {{"a0", 0}, {"a1", 2}}), a, {0, 2});
  const AEmbedding& e = *b4.embedding;

  CHECK(is_a_congruence(Congruence::diagonal(4), e).ok);
  CHECK(is_a_congruence(Congruence::from_classes({0, 1, 2, 1}), e).ok);  // merges 1,3 only

  ACongruenceResult bad = is_a_congruence(Congruence::all_pairs(4), e);
  CHECK_FALSE(bad.ok);
  CHECK(bad.witness == std::pair<int, int>{0, 1});

  ACongruenceResult mid = is_a_congruence(Congruence::from_classes({0, 1, 0, 1}), e);
  CHECK_FALSE(mid.ok);  // 0 and 2 are the images of A's two elements
}

TEST_CASE("meet and join") {
  Congruence mid = Congruence::from_classes({0, 1, 0, 1});
  CHECK(meet(mid, Congruence::all_pairs(4)) == mid);
  CHECK(meet(mid, Congruence::diagonal(4)) == Congruence::diagonal(4));
  CHECK(meet(mid, mid) == mid);

  FiniteAlgebra k = klein();
  Congruence s1 = Congruence::from_classes({0, 0, 1, 1});  // subgroup {0,1}
  Congruence s2 = Congruence::from_classes({0, 1, 0, 1});  // subgroup {0,2}
  CHECK(join(k, s1, s2) == Congruence::all_pairs(4));
  CHECK(join(k, s1, Congruence::diagonal(4)) == s1);
  CHECK(meet(s1, s2) == Congruence::diagonal(4));
}

TEST_CASE("congruence_lattice: frozen sizes and order") {
  std::vector<Congruence> z4 = congruence_lattice(zmod(4));
  REQUIRE(z4.size() == 3);
  CHECK(z4[0] == Congruence::diagonal(4));
  CHECK(z4[1] == Congruence::from_classes({0, 1, 0, 1}));
  CHECK(z4[2] == Congruence::all_pairs(4));

  CHECK(congruence_lattice(klein()).size() == 5);
  CHECK(congruence_lattice(zmod(3)).size() == 2);
  CHECK(congruence_lattice(zmod(1)).size() == 1);
  CHECK(congruence_lattice(semilattice2()).size() == 2);
}

TEST_CASE("congruence_lattice matches brute-force partition filtering") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Signature sig{{{"f", 2}}, {"c"}};
    FiniteAlgebra a = random_algebra(sig, 4, seed);
    std::set<std::vector<int>> expected;
    for (const auto& rg : all_partitions(4))
      if (congruence_compatible(a, Congruence::from_classes(rg)))
        expected.insert(Congruence::from_classes(rg).block_of);
    std::set<std::vector<int>> got;
    for (const Congruence& c : congruence_lattice(a)) got.insert(c.block_of);
    CHECK(got == expected);
  }
}

TEST_CASE("congruence_lattice refuses large carriers") {
  CHECK(error_code([&] { congruence_lattice(zmod(9)); }) == "cap-exceeded");
}

TEST_CASE("ascending_chains: frozen shapes") {
  auto single = ascending_chains(zmod(1), nullptr, 8);
  REQUIRE(single.size() == 1);
  CHECK(single[0].size() == 1);

  auto z2 = ascending_chains(zmod(2), nullptr, 8);
  REQUIRE(z2.size() == 1);
  CHECK(z2[0].size() == 2);
  CHECK(z2[0][0] == Congruence::diagonal(2));
  CHECK(z2[0][1] == Congruence::all_pairs(2));

  auto z4 = ascending_chains(zmod(4), nullptr, 8);
  REQUIRE(z4.size() == 1);
  CHECK(z4[0].size() == 3);

  auto k = ascending_chains(klein(), nullptr, 8);
  CHECK(k.size() == 3);
  for (const auto& chain : k) {
    CHECK(chain.size() == 3);
    CHECK(chain.front() == Congruence::diagonal(4));
    CHECK(chain.back() == Congruence::all_pairs(4));
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      CHECK(refines(chain[i], chain[i + 1]));
      CHECK_FALSE(chain[i] == chain[i + 1]);
    }
  }

  // maxlen drops longer chains instead of truncating them
  CHECK(ascending_chains(zmod(4), nullptr, 2).empty());
}

TEST_CASE("ascending_chains restricted to A-congruences") {
  FiniteAlgebra a = zmod_with(2, {{"a0", 0}, {"a1", 1}});
  FiniteAlgebra b4 = over(zmod_with(4, {{"a0", 0}, {"a1", 2}}), a, {0, 2});
  auto chains = ascending_chains(b4, b4.embedding.get(), 8);
  // every congruence of Z4 above the diagonal merges 0 and 2
  REQUIRE(chains.size() == 1);
  CHECK(chains[0] == std::vector<Congruence>{Congruence::diagonal(4)});
}

TEST_CASE("canonical order is lexicographic on carrier, then block assignment") {
  Congruence d = Congruence::diagonal(3);
  Congruence m1 = Congruence::from_classes({0, 0, 1});
  Congruence m2 = Congruence::from_classes({0, 1, 0});
  Congruence a = Congruence::all_pairs(3);
  CHECK(a < m1);
  CHECK(m1 < m2);
  CHECK(m2 < d);
  CHECK_FALSE(d < a);
  CHECK(Congruence::diagonal(2) < a);
}
