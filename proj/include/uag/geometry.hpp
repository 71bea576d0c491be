#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uag/algebra.hpp"
#include "uag/caps.hpp"
#include "uag/equation.hpp"
#include "uag/term.hpp"

namespace uag {

// A finite set of points of B^n in lexicographic order, optionally carrying
// the system it solves.
struct AlgebraicSet {
  int carrier_size = 0;
  int n = 0;
  std::vector<Assignment> points;  // lex sorted, duplicate-free
  std::optional<EqSystem> defining;

  bool contains(const Assignment& p) const;
  bool same_points(const AlgebraicSet& other) const {
    return n == other.n && points == other.points;
  }
};

// Finite union of algebraic sets over one (B, n); empty list = empty set.
struct ClosedSet {
  std::vector<AlgebraicSet> components;

  // The union as a lex-sorted duplicate-free point list.
  std::vector<Assignment> point_union() const;
};

// The term functions Y -> B as a finite algebra: element i is the value
// tuple tuples[i] over Y's canonical point order, named by witnesses[i].
struct CoordinateAlgebra {
  FiniteAlgebra algebra;
  std::vector<std::vector<int>> tuples;
  std::vector<Term> witnesses;
  std::vector<Assignment> y_points;  // the point order the tuples index
};

// Exact brute-force V_B(S) over B^n. jobs > 1 partitions the scan across
// threads; the result order is independent of jobs.
AlgebraicSet solve(const FiniteAlgebra& b, const EqSystem& system, const Caps& caps = {},
                   int jobs = 1);

// Solves the concatenated system and asserts it equals the pointwise
// intersection of the individual solutions. The empty list yields B^n over
// the supplied context.
AlgebraicSet intersect_by_union(const FiniteAlgebra& b, const Signature& sig,
                                const std::vector<std::string>& vars,
                                const std::vector<EqSystem>& systems, const Caps& caps = {});

// p ≈ q holds at every point of Y (vacuously true on the empty set).
bool radical_member(const FiniteAlgebra& b, const AlgebraicSet& y, const Equation& e);

// Function-algebra closure over a nonempty Y: seed the n projections and
// the constant functions, close under pointwise operations, name each
// element by a witnessing term. Rejects Y = ∅ with Error("empty-set").
CoordinateAlgebra coordinate_algebra(const FiniteAlgebra& b, const AlgebraicSet& y,
                                     const Caps& caps = {});

// Zariski closure of Y: c̄ lies in the closure iff no two term functions
// agree across Y yet differ at c̄, decided exactly by a tracked function
// closure over Y ∪ {c̄}. closure(∅) = ∅.
AlgebraicSet zariski_closure(const FiniteAlgebra& b, const AlgebraicSet& y,
                             const Caps& caps = {});

struct Certificate {
  std::vector<int> kept;  // indices into the input system
  AlgebraicSet solution;
};

// Greedy pass in input order keeping exactly the equations that strictly
// shrink the running solution set; V_B(kept) = V_B(S) and |kept| <= m^n.
Certificate noetherian_certificate(const FiniteAlgebra& b, const EqSystem& system,
                                   const Caps& caps = {});

struct DescendingChain {
  std::vector<AlgebraicSet> sets;
  std::vector<bool> proper;  // proper[i]: sets[i+1] is strictly below sets[i]
};

// Solution sets of an ascending list of systems, each an index-prefix
// extension of the previous, with per-step properness flags.
DescendingChain descending_chain(const FiniteAlgebra& b, const std::vector<EqSystem>& systems,
                                 const Caps& caps = {});

}  // namespace uag
