#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "uag/algebra.hpp"
#include "uag/caps.hpp"
#include "uag/congruence.hpp"
#include "uag/equation.hpp"
#include "uag/geometry.hpp"
#include "uag/term.hpp"

namespace uag {

// One coordinate of the indexing product: the family member and the point
// of its power the coordinate evaluates at.
struct ProductCoordinate {
  int member = 0;
  Assignment point;
};

// The relatively free algebra of the pre-variety generated by a finite
// family: the subalgebra of ∏_{(B, b̄)} B generated by the n projection
// tuples and the constant tuples. Two terms name the same element exactly
// when the equation between them holds identically over the family.
struct FreeAlgebra {
  FiniteAlgebra base;
  int n = 0;
  std::vector<int> generators;              // element ids of the x̄_j
  std::vector<FiniteAlgebra> family;
  std::vector<ProductCoordinate> diagram;   // member-major, points lexicographic
  std::vector<std::vector<int>> coords;     // per element, one value per coordinate
  std::vector<Term> witnesses;              // per element, a naming term
};

// Builds the free algebra on n generators. with_a requires every family
// member to carry one and the same coefficient structure and equips the
// result with the diagonal embedding of A.
FreeAlgebra free_algebra(const std::vector<FiniteAlgebra>& family, int n, bool with_a,
                         const Caps& caps = {});

// The coordinate projection at (B, b̄): the unique homomorphism sending
// generator j to b̄_j. B must be a family member (matched by tables).
Homomorphism universal_map(const FreeAlgebra& f, const FiniteAlgebra& b, const Assignment& point);

struct GenericPoint {
  FiniteAlgebra quotient;    // F/R
  Homomorphism projection;   // F -> F/R
  Assignment point;          // generator blocks, one per x_j
};

// The tuple of generator blocks in F/R, with the defining property checked:
// every element's witness term evaluates at the point to the element's block.
GenericPoint generic_point(const FreeAlgebra& f, const Congruence& r);

struct ForwardMemberCheck {
  std::int64_t v_s = 0;    // |V_B(S)|
  std::int64_t v_s0 = 0;   // |V_B(S₀)| (0 is also the target in the inconsistent branch)
  bool passed = false;     // exact set equality (resp. emptiness) confirmed by scan
};

struct ForwardReport {
  bool consistent = true;                 // the generated congruence respects A
  std::pair<int, int> merged_a{-1, -1};   // offending A elements when inconsistent
  EqSystem s0;                            // finite witness system (empty when inconsistent)
  std::vector<ForwardMemberCheck> checks; // one per family member, family order
  bool ok = true;                         // conjunction of the checks
};

// Forward half of the equivalence: the congruence generated by S's
// evaluation pairs in F is either no A-congruence (then V_B(S) = ∅
// everywhere) or finitely generated, and the generating pairs' witness
// equations S₀ cut out the same solution sets. Everything is verified by
// exhaustive scan for every family member.
ForwardReport theorem_forward(const std::vector<FiniteAlgebra>& family, int n,
                              const EqSystem& system, const Caps& caps = {});

enum class WitnessStatus { confirmed, failed, skipped };

struct ConverseStep {
  int step = 0;              // transition S_step -> S_step+1
  std::int64_t v_size = 0;   // |V_B(S_step)|
  bool proper = false;       // V_B(S_step) ⊋ V_B(S_step+1), by scan
  WitnessStatus witness = WitnessStatus::skipped;
};

struct ConverseReport {
  std::vector<ConverseStep> steps;  // one per transition (empty for chains of length 1)
  std::int64_t final_v_size = 0;    // |V_B(S_k)| for the last chain entry
  int b_size = 0;                   // carrier of B = ∏ F/R_i
  bool all_proper = true;
};

// Converse half: a strictly ascending chain of A-congruences on F yields a
// strictly descending chain of algebraic sets over B = ∏ F/R_i. Properness
// is decided by direct scan; separately, the paper's witness — the generic
// point of F/R_i injected via trivial-subalgebra padding — is confirmed,
// refuted, or skipped when A has no trivial subalgebra.
ConverseReport theorem_converse(const FreeAlgebra& f, const std::vector<Congruence>& chain,
                                const Caps& caps = {});

// Convenience overload building F = free_algebra(family, n, with A).
ConverseReport theorem_converse(const std::vector<FiniteAlgebra>& family, int n,
                                const std::vector<Congruence>& chain, const Caps& caps = {});

}  // namespace uag
