#include "doctest.h"

#include <algorithm>
#include <random>
#include <vector>

#include "builders.hpp"
#include "oracles.hpp"
#include "testutil.hpp"
#include "uag/error.hpp"
#include "uag/geometry.hpp"

using namespace uag;
using namespace uag::testing;

namespace {

EqSystem make_system(const Signature& sig, const std::vector<std::string>& vars,
                     const std::vector<std::pair<std::string, std::string>>& eqs) {
  EqSystem s;
  s.sig = sig;
  s.vars = vars;
  for (const auto& [l, r] : eqs)
    s.equations.push_back({parse_term(l, sig, vars), parse_term(r, sig, vars)});
  return s;
}

AlgebraicSet points_of(const FiniteAlgebra& b, int n, std::vector<Assignment> pts) {
  AlgebraicSet y;
  y.carrier_size = b.size;
  y.n = n;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  y.points = std::move(pts);
  return y;
}

}  // namespace

TEST_CASE("solve: frozen Z4 example and empty/trivial systems") {
  FiniteAlgebra z4 = zmod(4);
  AlgebraicSet v = solve(z4, make_system(z4.sig, {"x"}, {{"add(x,x)", "zero"}}));
  CHECK(v.points == std::vector<Assignment>{{0}, {2}});
  CHECK(v.n == 1);
  CHECK(v.carrier_size == 4);
  REQUIRE(v.defining.has_value());

  AlgebraicSet all = solve(z4, make_system(z4.sig, {"x"}, {}));
  CHECK(all.points.size() == 4);

  AlgebraicSet trivial = solve(z4, make_system(z4.sig, {"x"}, {{"zero", "add(zero,zero)"}}));
  CHECK(trivial.points.size() == 4);

  AlgebraicSet plane = solve(z4, make_system(z4.sig, {"x", "y"}, {}));
  CHECK(plane.points.size() == 16);
  CHECK(std::is_sorted(plane.points.begin(), plane.points.end()));
}

TEST_CASE("solve rejects foreign systems and oversized scans") {
  FiniteAlgebra z4 = zmod(4);
  EqSystem foreign = make_system(semilattice2().sig, {"x"}, {{"x", "top"}});
  CHECK(error_code([&] { solve(z4, foreign); }) == "context-mismatch");

  EqSystem wide = make_system(z4.sig, var_names(13), {});
  CHECK(error_code([&] { solve(z4, wide); }) == "cap-exceeded");
}

TEST_CASE("solve partitions scans identically across jobs") {
  FiniteAlgebra z4 = zmod(4);
  EqSystem s = make_system(z4.sig, {"x", "y", "z"}, {{"add(x,add(y,z))", "zero"}});
  AlgebraicSet one = solve(z4, s, {}, 1);
  for (int jobs : {2, 3, 5, 8}) CHECK(solve(z4, s, {}, jobs).points == one.points);
  CHECK(one.points.size() == 16);  // z determined by x,y
}

TEST_CASE("intersect_by_union matches the intersection identity") {
  FiniteAlgebra z4 = zmod(4);
  EqSystem s1 = make_system(z4.sig, {"x"}, {{"add(x,x)", "zero"}});
  EqSystem s2 = make_system(z4.sig, {"x"}, {{"x", "zero"}});

  AlgebraicSet same = intersect_by_union(z4, z4.sig, {"x"}, {s1, s1});
  CHECK(same.points == solve(z4, s1).points);

  AlgebraicSet both = intersect_by_union(z4, z4.sig, {"x"}, {s1, s2});
  CHECK(both.points == std::vector<Assignment>{{0}});

  AlgebraicSet everything = intersect_by_union(z4, z4.sig, {"x"}, {});
  CHECK(everything.points.size() == 4);
}

TEST_CASE("radical membership at every point of Y") {
  FiniteAlgebra z4 = zmod(4);
  Equation dbl{parse_term("add(x,x)", z4.sig, {"x"}), parse_term("zero", z4.sig, {"x"})};
  CHECK(radical_member(z4, points_of(z4, 1, {{0}}), dbl));
  CHECK_FALSE(radical_member(z4, points_of(z4, 1, {{1}}), dbl));
  CHECK(radical_member(z4, points_of(z4, 1, {}), dbl));  // vacuous
  CHECK(radical_member(z4, points_of(z4, 1, {{0}, {2}}), dbl));
}

TEST_CASE("coordinate_algebra: frozen closures over full carriers") {
  FiniteAlgebra z2 = zmod(2);
  CoordinateAlgebra g2 = coordinate_algebra(z2, points_of(z2, 1, {{0}, {1}}));
  CHECK(g2.algebra.size == 2);  // identity and constant zero

  FiniteAlgebra z4 = zmod(4);
  CoordinateAlgebra g4 = coordinate_algebra(z4, points_of(z4, 1, {{0}, {1}, {2}, {3}}));
  CHECK(g4.algebra.size == 4);  // x, 2x, 3x, 0
  auto iso = find_isomorphism(g4.algebra, z4);
  CHECK(iso.has_value());
}

TEST_CASE("coordinate_algebra names every element with a faithful witness") {
  FiniteAlgebra z4 = zmod(4);
  for (auto& y : {points_of(z4, 1, {{1}}), points_of(z4, 1, {{0}, {3}}),
                  points_of(z4, 2, {{0, 1}, {2, 3}, {1, 1}})}) {
    CoordinateAlgebra g = coordinate_algebra(z4, y);
    REQUIRE(g.tuples.size() == static_cast<std::size_t>(g.algebra.size));
    REQUIRE(g.witnesses.size() == g.tuples.size());
    CHECK(g.y_points == y.points);
    for (std::size_t i = 0; i < g.tuples.size(); ++i)
      CHECK(term_function(g.witnesses[i], y.points, z4) == g.tuples[i]);
    // closed under ops: apply add to the first two elements, find the tuple
    if (g.algebra.size >= 2) {
      std::vector<int> combined(y.points.size());
      for (std::size_t p = 0; p < y.points.size(); ++p)
        combined[p] = z4.apply(0, std::vector<int>{g.tuples[0][p], g.tuples[1][p]});
      CHECK(std::find(g.tuples.begin(), g.tuples.end(), combined) != g.tuples.end());
    }
  }
}

TEST_CASE("coordinate_algebra of a single point is the generated subalgebra") {
  FiniteAlgebra z4 = zmod(4);
  CoordinateAlgebra g = coordinate_algebra(z4, points_of(z4, 1, {{3}}));
  // one-point functions are elements: {3} generates all of Z4
  CHECK(g.algebra.size == 4);
  CoordinateAlgebra g2 = coordinate_algebra(z4, points_of(z4, 1, {{2}}));
  CHECK(g2.algebra.size == 2);  // {2} generates {0,2}
}

TEST_CASE("coordinate_algebra rejects the empty set") {
  FiniteAlgebra z4 = zmod(4);
  CHECK(error_code([&] { coordinate_algebra(z4, points_of(z4, 1, {})); }) == "empty-set");
}

TEST_CASE("zariski_closure: frozen cases") {
  FiniteAlgebra z4 = zmod(4);
  CHECK(zariski_closure(z4, points_of(z4, 1, {})).points.empty());

  AlgebraicSet full = points_of(z4, 1, {{0}, {1}, {2}, {3}});
  CHECK(zariski_closure(z4, full).points == full.points);

  // {1} is dense: every unary term is k·x and k·1 = k'·1 forces k = k'
  CHECK(zariski_closure(z4, points_of(z4, 1, {{1}})).points == full.points);

  // algebraic sets are closed
  AlgebraicSet v = solve(z4, make_system(z4.sig, {"x"}, {{"add(x,x)", "zero"}}));
  CHECK(zariski_closure(z4, v).points == v.points);
}

TEST_CASE("zariski_closure is extensive, monotone, and idempotent") {
  FiniteAlgebra k = klein();
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<Assignment> pts1, pts2;
    for (int i = 0; i < 4; ++i) {
      Assignment p{static_cast<int>(rng() % 4), static_cast<int>(rng() % 4)};
      pts1.push_back(p);
      pts2.push_back(p);
    }
    pts2.push_back({static_cast<int>(rng() % 4), static_cast<int>(rng() % 4)});
    AlgebraicSet y1 = points_of(k, 2, pts1);
    AlgebraicSet y2 = points_of(k, 2, pts2);

    AlgebraicSet c1 = zariski_closure(k, y1);
    AlgebraicSet c2 = zariski_closure(k, y2);
    CHECK(std::includes(c1.points.begin(), c1.points.end(), y1.points.begin(),
                        y1.points.end()));  // extensive
    CHECK(std::includes(c2.points.begin(), c2.points.end(), c1.points.begin(),
                        c1.points.end()));  // monotone (y1 ⊆ y2)
    CHECK(zariski_closure(k, c1).points == c1.points);  // idempotent
  }
}

TEST_CASE("noetherian_certificate: frozen greedy pass") {
  FiniteAlgebra z4 = zmod(4);
  EqSystem s = make_system(z4.sig, {"x"},
                           {{"add(x,x)", "zero"},
                            {"add(add(x,x),add(x,x))", "zero"},
                            {"x", "zero"}});
  Certificate c = noetherian_certificate(z4, s);
  CHECK(c.kept == std::vector<int>{0, 2});
  CHECK(c.solution.points == std::vector<Assignment>{{0}});

  EqSystem repeated = make_system(z4.sig, {"x"}, {});
  for (int i = 0; i < 100; ++i)
    repeated.equations.push_back(
        {parse_term("add(x,x)", z4.sig, {"x"}), parse_term("zero", z4.sig, {"x"})});
  Certificate r = noetherian_certificate(z4, repeated);
  CHECK(r.kept == std::vector<int>{0});

  Certificate empty = noetherian_certificate(z4, make_system(z4.sig, {"x"}, {}));
  CHECK(empty.kept.empty());
  CHECK(empty.solution.points.size() == 4);
}

TEST_CASE("noetherian_certificate never keeps more than m^n equations") {
  FiniteAlgebra z4 = zmod(4);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    EqSystem s = random_system(z4.sig, 2, 30, 3, seed);
    Certificate c = noetherian_certificate(z4, s);
    CHECK(c.kept.size() <= 16);
    CHECK(c.solution.points == solve(z4, s).points);
    std::vector<int> sorted = c.kept;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == c.kept);  // input order
  }
}

TEST_CASE("descending_chain: properness flags and prefix validation") {
  FiniteAlgebra z4 = zmod(4);
  EqSystem s1 = make_system(z4.sig, {"x"}, {{"add(x,x)", "zero"}});
  EqSystem s2 = s1;
  s2.equations.push_back(
      {parse_term("add(add(x,x),add(x,x))", z4.sig, {"x"}), parse_term("zero", z4.sig, {"x"})});
  EqSystem s3 = s2;
  s3.equations.push_back({parse_term("x", z4.sig, {"x"}), parse_term("zero", z4.sig, {"x"})});

  DescendingChain chain = descending_chain(z4, {s1, s2, s3});
  REQUIRE(chain.sets.size() == 3);
  CHECK(chain.sets[0].points.size() == 2);
  CHECK(chain.sets[1].points.size() == 2);
  CHECK(chain.sets[2].points.size() == 1);
  CHECK(chain.proper == std::vector<bool>{false, true});

  DescendingChain constant = descending_chain(z4, {s1, s1, s1});
  CHECK(constant.proper == std::vector<bool>{false, false});

  EqSystem other = make_system(z4.sig, {"x"}, {{"x", "zero"}});
  CHECK(error_code([&] { descending_chain(z4, {s1, other}); }) == "not-a-chain");
}

TEST_CASE("descending_chain ending in an inconsistent system reaches the empty set") {
  FiniteAlgebra b = zmod_with(4, {{"a1", 1}});
  EqSystem s1 = make_system(b.sig, {"x"}, {{"add(x,x)", "zero"}});
  EqSystem s2 = s1;
  s2.equations.push_back({parse_term("x", b.sig, {"x"}), parse_term("add(x,a1)", b.sig, {"x"})});
  DescendingChain chain = descending_chain(b, {s1, s2});
  CHECK(chain.sets.back().points.empty());
  CHECK(chain.proper == std::vector<bool>{true});
}

TEST_CASE("AlgebraicSet::contains uses binary search over the canonical order") {
  FiniteAlgebra z4 = zmod(4);
  AlgebraicSet y = points_of(z4, 2, {{0, 1}, {2, 3}, {1, 1}});
  CHECK(y.contains({0, 1}));
  CHECK(y.contains({2, 3}));
  CHECK_FALSE(y.contains({3, 3}));

  ClosedSet u;
  u.components.push_back(points_of(z4, 1, {{0}, {2}}));
  u.components.push_back(points_of(z4, 1, {{2}, {3}}));
  CHECK(u.point_union() == std::vector<Assignment>{{0}, {2}, {3}});
}
