#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uag/algebra.hpp"
#include "uag/caps.hpp"
#include "uag/term.hpp"
#include "uag/union_find.hpp"

namespace uag {

// p ≈ q over a shared (signature, variable list) context.
struct Equation {
  Term lhs;
  Term rhs;
};

// An ordered system of equations. Order is significant: finite-subsystem
// certificates and chain reports cite equation indices.
struct EqSystem {
  Signature sig;
  std::vector<std::string> vars;
  std::vector<Equation> equations;
};

// Throws Error("context-mismatch") unless every symbol index in t is in
// range over (sig, n_vars) with correct arity.
void ensure_over(const Term& t, const Signature& sig, int n_vars);

// b̄ solves the equation / every equation of the system.
bool satisfies(const FiniteAlgebra& algebra, const Equation& e, const Assignment& asg);
bool satisfies(const FiniteAlgebra& algebra, const EqSystem& system, const Assignment& asg);

// Congruence closure over the shared-subterm DAG of a system, variables
// acting as fresh constants. Decides membership in the generated ideal [S]
// for any pair of represented terms: closure restricted to the subterm
// universe of S and the query is sound and complete for that pair. Queries
// may be added incrementally; new nodes only ever join existing classes, so
// earlier answers stay valid.
class IdealDecider {
public:
  explicit IdealDecider(const EqSystem& system);

  bool member(const Equation& e);

  // Node handle of a term (interning it); class equality decides ≈.
  int add(const Term& t);
  bool same(int a, int b) { return uf_.same(a, b); }

private:
  struct Node {
    int op;   // >= 0: application (op index); -1: variable; -2: constant
    int sym;  // var/const index for leaves, unused for applications
    std::vector<int> kids;
  };

  int intern(const Term& t);
  std::vector<int> class_key(int node);
  void merge(int a, int b);

  const Signature* sig_;
  int n_vars_ = 0;
  std::vector<Node> nodes_;
  std::map<std::vector<int>, int> structural_;     // exact shape -> node
  std::map<std::vector<int>, int> class_table_;    // (op, kid classes) -> node
  std::vector<std::vector<int>> uses_;             // application parents, per class root
  UnionFind uf_;
};

// One-shot membership: e.lhs ≈ e.rhs in the ideal generated by the system.
bool ideal_member(const EqSystem& system, const Equation& e);

struct AIdealResult {
  bool ok = true;
  std::pair<int, int> witness{-1, -1};  // constant indices merged by [S]
};

// False iff the closure of S merges two distinct listed constants.
AIdealResult is_a_ideal(const EqSystem& system, const std::vector<int>& a_constants);

struct ConsistencyWitness {
  int family_index = -1;
  Assignment point;
};

// First (B, b̄) in family order (points lexicographic within each algebra)
// solving the system, else nullopt.
std::optional<ConsistencyWitness> consistent_over(const std::vector<FiniteAlgebra>& family,
                                                  const EqSystem& system, const Caps& caps = {});

}  // namespace uag
