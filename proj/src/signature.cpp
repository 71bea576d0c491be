#include "uag/signature.hpp"

#include <unordered_set>

#include "uag/error.hpp"

namespace uag {

int Signature::op_index(const std::string& name) const {
  for (std::size_t i = 0; i < ops.size(); ++i)
    if (ops[i].name == name) return static_cast<int>(i);
  return -1;
}

int Signature::constant_index(const std::string& name) const {
  for (std::size_t i = 0; i < constants.size(); ++i)
    if (constants[i] == name) return static_cast<int>(i);
  return -1;
}

bool Signature::has_symbol(const std::string& name) const {
  return op_index(name) >= 0 || constant_index(name) >= 0;
}

Diagnostic validate(const Signature& sig) {
  std::unordered_set<std::string> seen;
  for (const auto& op : sig.ops) {
    if (op.name.empty()) return Diagnostic::violation("operation symbol with empty name");
    if (op.arity < 1)
      return Diagnostic::violation("operation symbol '" + op.name +
                                   "' has arity " + std::to_string(op.arity) +
                                   "; nullaries must be constants");
    if (!seen.insert(op.name).second)
      return Diagnostic::violation("duplicate symbol " + op.name);
  }
  for (const auto& c : sig.constants) {
    if (c.empty()) return Diagnostic::violation("constant symbol with empty name");
    if (!seen.insert(c).second) return Diagnostic::violation("duplicate symbol " + c);
  }
  return Diagnostic::pass();
}

Signature extend_with_constants(const Signature& sig, const std::vector<std::string>& names) {
  Signature out = sig;
  for (const auto& name : names) {
    if (name.empty()) fail("duplicate-symbol", "empty constant name in extension");
    if (out.has_symbol(name))
      fail("duplicate-symbol", "constant '" + name + "' clashes with an existing symbol");
    out.constants.push_back(name);
  }
  return out;
}

}  // namespace uag
