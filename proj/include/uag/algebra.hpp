#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uag/caps.hpp"
#include "uag/signature.hpp"

namespace uag {

struct AEmbedding;

// A finite algebra given by total operation tables over the carrier
// {0, ..., size-1}. Tables are flat row-major (first argument is the most
// significant index). Immutable after construction.
struct FiniteAlgebra {
  Signature sig;
  int size = 0;
  std::vector<std::vector<int>> tables;  // tables[op], size^arity entries
  std::vector<int> const_interp;         // one element per constant symbol
  std::shared_ptr<const AEmbedding> embedding;  // A-algebra structure, may be null

  int apply(int op, std::span<const int> args) const;
  int constant(int c) const { return const_interp[static_cast<std::size_t>(c)]; }
};

// The A-algebra structure of a codomain algebra: an injective, operation and
// constant preserving map from the coefficient algebra A. a_constants[k] is
// the index of the constant symbol naming element k of A; the codomain must
// interpret that constant as map[k].
struct AEmbedding {
  FiniteAlgebra domain;        // A (its own embedding field is ignored)
  std::vector<int> map;        // |A| entries into the codomain carrier
  std::vector<int> a_constants;
};

struct Homomorphism {
  FiniteAlgebra domain;
  FiniteAlgebra codomain;
  std::vector<int> map;
};

struct CheckResult {
  bool ok = true;
  std::string witness;  // a concrete violated instance when !ok

  static CheckResult pass() { return {}; }
  static CheckResult violation(std::string w) { return {false, std::move(w)}; }
};

// Tables total and in range, constants in range, embedding (when present)
// checked in full.
Diagnostic validate_algebra(const FiniteAlgebra& algebra);

// Direct product; carrier indexed by factor tuples in lexicographic order,
// operations coordinatewise, constants diagonal.
FiniteAlgebra product(const std::vector<FiniteAlgebra>& factors, const Caps& caps = {});

struct Congruence;

struct QuotientResult {
  FiniteAlgebra algebra;
  Homomorphism projection;
};

// B/R with blocks ordered by least member. Verifies compatibility first and
// throws Error("invalid-congruence") with a witness on violation.
QuotientResult quotient(const FiniteAlgebra& algebra, const Congruence& r);

// Least subset containing gens (and every constant when include_constants)
// closed under all operations.
std::vector<int> subalgebra_generated(const FiniteAlgebra& algebra, const std::vector<int>& gens,
                                      bool include_constants);

CheckResult check_a_embedding(const AEmbedding& e, const FiniteAlgebra& codomain);

// All elements e with f(e, ..., e) = e for every operation symbol; constants
// are not required to fix e (a trivial subalgebra of the plain language).
std::vector<int> find_trivial_subalgebras(const FiniteAlgebra& algebra);

CheckResult check_homomorphism(const Homomorphism& h);

}  // namespace uag
