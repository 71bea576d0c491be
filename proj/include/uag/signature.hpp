#pragma once

#include <string>
#include <vector>

namespace uag {

struct OpSymbol {
  std::string name;
  int arity = 0;  // >= 1; nullaries live in Signature::constants

  bool operator==(const OpSymbol&) const = default;
};

// An algebraic language: operation symbols with arities plus an ordered list
// of constant symbols. Constants are the only nullaries, and their index is
// their identity in every file format and embedding.
struct Signature {
  std::vector<OpSymbol> ops;
  std::vector<std::string> constants;

  bool operator==(const Signature&) const = default;

  int op_index(const std::string& name) const;
  int constant_index(const std::string& name) const;
  bool has_symbol(const std::string& name) const;
};

struct Diagnostic {
  bool ok = true;
  std::string message;

  static Diagnostic pass() { return {}; }
  static Diagnostic violation(std::string msg) { return {false, std::move(msg)}; }
};

// ok iff all symbol names are non-empty and pairwise distinct and every op
// has arity >= 1. The diagnostic pinpoints the first violation.
Diagnostic validate(const Signature& sig);

// L -> L(A): appends new constant symbols, preserving order. Throws
// Error("duplicate-symbol") naming the clash when a name is not fresh.
Signature extend_with_constants(const Signature& sig, const std::vector<std::string>& names);

}  // namespace uag
