#pragma once

#include <string>
#include <utility>
#include <vector>

#include "uag/algebra.hpp"
#include "uag/caps.hpp"

namespace uag {

// An operation-compatible partition of a carrier, stored as a canonical
// block assignment: blocks are numbered by least member, ascending.
struct Congruence {
  int carrier = 0;
  std::vector<int> block_of;

  static Congruence diagonal(int carrier);
  static Congruence all_pairs(int carrier);
  // Canonicalizes an arbitrary equivalence given as element -> class id.
  static Congruence from_classes(const std::vector<int>& raw);

  int block_count() const;
  std::vector<std::vector<int>> block_list() const;
  bool related(int a, int b) const { return block_of[a] == block_of[b]; }

  bool operator==(const Congruence&) const = default;
  bool operator<(const Congruence& other) const;  // canonical order
};

// R1 <= R2 as relations: every R1 block lies inside an R2 block.
bool refines(const Congruence& fine, const Congruence& coarse);

// Full-scan compatibility test; fills *witness with (op, arguments,
// conflicting blocks) on failure when witness is non-null.
bool congruence_compatible(const FiniteAlgebra& algebra, const Congruence& r,
                           std::string* witness = nullptr);

// Least congruence containing the pairs: disjoint-set forest over the
// carrier, then scan all operations for compatibility violations and merge
// until fixpoint.
Congruence congruence_generated(const FiniteAlgebra& algebra,
                                const std::vector<std::pair<int, int>>& pairs);

struct ACongruenceResult {
  bool ok = true;
  std::pair<int, int> witness{-1, -1};  // offending elements of A when !ok
};

// True iff no two distinct A-images share a block.
ACongruenceResult is_a_congruence(const Congruence& r, const AEmbedding& e);

// Blockwise intersection; always a congruence when both inputs are.
Congruence meet(const Congruence& r1, const Congruence& r2);

// Generated by the union of the two relations.
Congruence join(const FiniteAlgebra& algebra, const Congruence& r1, const Congruence& r2);

// All congruences of the algebra: join-closure of the principal congruences,
// sorted by descending block count (diagonal first, all-pairs last), then
// canonically. Refuses carriers above the cap.
std::vector<Congruence> congruence_lattice(const FiniteAlgebra& algebra, const Caps& caps = {});

// All maximal proper chains of (A-)congruences of length <= maxlen, each
// ordered ascending. Chains that cannot be extended at either end or by
// insertion are returned; longer ones are dropped.
std::vector<std::vector<Congruence>> ascending_chains(const FiniteAlgebra& algebra,
                                                      const AEmbedding* a_structure, int maxlen,
                                                      const Caps& caps = {});

}  // namespace uag
