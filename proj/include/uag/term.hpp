#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uag/caps.hpp"
#include "uag/signature.hpp"

namespace uag {

struct FiniteAlgebra;

// A point (b_1, ..., b_n) of B^n, one carrier element per variable.
using Assignment = std::vector<int>;

// Immutable arity-checked term tree over a signature and an ambient variable
// list X = {x_1, ..., x_n}. Equality is structural.
class Term {
public:
  enum class Kind { Var, Const, App };

  static Term var(int index);
  static Term constant(int index);
  // Checks arity against the signature; throws Error("arity-mismatch").
  static Term app(const Signature& sig, int op, std::vector<Term> children);

  Kind kind() const { return kind_; }
  int sym() const { return sym_; }
  const std::vector<Term>& children() const { return children_; }
  int height() const;

  bool operator==(const Term& other) const;

private:
  Term(Kind k, int sym, std::vector<Term> children)
      : kind_(k), sym_(sym), children_(std::move(children)) {}

  Kind kind_;
  int sym_;
  std::vector<Term> children_;
};

// Grammar: term := var | const | opname "(" term ("," term)* ")".
// Whitespace is insignificant. Errors carry the offending position.
Term parse_term(const std::string& text, const Signature& sig,
                const std::vector<std::string>& vars);

std::string print_term(const Term& t, const Signature& sig,
                       const std::vector<std::string>& vars);

// p^B(b_1, ..., b_n): structural recursion over the operation tables.
int evaluate(const Term& t, const FiniteAlgebra& algebra, const Assignment& asg);

// The term function p^Y as a value tuple over the points of Y, which must be
// in the canonical (lexicographic) point order.
std::vector<int> term_function(const Term& t, const std::vector<std::vector<int>>& y_points,
                               const FiniteAlgebra& algebra);

// Exact count of terms of height <= depth, saturating at INT64_MAX.
std::int64_t count_terms(const Signature& sig, int n_vars, int depth);

// All terms of height <= depth in the canonical order: height-major; within
// one height, variables then constants (height 0) and applications ordered by
// (arity, op index) with argument tuples row-major over the enumeration of
// lower heights. Refuses with Error("cap-exceeded") when the count would
// exceed the cap.
std::vector<Term> enumerate_terms(const Signature& sig, int n_vars, int depth,
                                  std::int64_t cap = Caps{}.term_cap);

}  // namespace uag
