#include "uag/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "uag/error.hpp"

namespace uag {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) fail("malformed-json", "expected an object with field '" + std::string(key) + "'");
  auto it = j.find(key);
  if (it == j.end()) fail("malformed-json", "missing field '" + std::string(key) + "'");
  return *it;
}

int int_value(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) fail("malformed-json", what + " must be an integer");
  return j.get<int>();
}

std::string string_value(const Json& j, const std::string& what) {
  if (!j.is_string()) fail("malformed-json", what + " must be a string");
  return j.get<std::string>();
}

const Json& array_value(const Json& j, const std::string& what) {
  if (!j.is_array()) fail("malformed-json", what + " must be an array");
  return j;
}

// Nested row-major table of the given arity: arrays of length m nested
// arity-deep with integer leaves.
void flatten_table(const Json& j, int arity, int m, std::vector<int>& out,
                   const std::string& what) {
  const Json& arr = array_value(j, what);
  if (static_cast<int>(arr.size()) != m)
    fail("malformed-json", what + " must have " + std::to_string(m) + " entries");
  for (const Json& cell : arr) {
    if (arity == 1)
      out.push_back(int_value(cell, what + " entry"));
    else
      flatten_table(cell, arity - 1, m, out, what);
  }
}

Json nest_table(const std::vector<int>& flat, int arity, int m, std::size_t& cursor) {
  Json arr = Json::array();
  for (int i = 0; i < m; ++i) {
    if (arity == 1)
      arr.push_back(flat[cursor++]);
    else
      arr.push_back(nest_table(flat, arity - 1, m, cursor));
  }
  return arr;
}

std::string directory_of(const std::string& path) {
  auto pos = path.find_last_of('/');
  return pos == std::string::npos ? std::string() : path.substr(0, pos);
}

std::string resolve(const std::string& base_dir, const std::string& path) {
  if (path.empty() || path.front() == '/' || base_dir.empty()) return path;
  return base_dir + "/" + path;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("missing-file", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) fail("malformed-json", "cannot parse '" + origin + "'");
  return j;
}

Signature signature_from_json(const Json& j) {
  Signature sig;
  for (const Json& op : array_value(field(j, "ops"), "ops")) {
    OpSymbol s;
    s.name = string_value(field(op, "name"), "op name");
    s.arity = int_value(field(op, "arity"), "op arity");
    sig.ops.push_back(std::move(s));
  }
  for (const Json& c : array_value(field(j, "constants"), "constants"))
    sig.constants.push_back(string_value(c, "constant name"));
  Diagnostic d = validate(sig);
  if (!d.ok) fail("invalid-signature", d.message);
  return sig;
}

Json signature_to_json(const Signature& sig) {
  Json ops = Json::array();
  for (const OpSymbol& op : sig.ops) ops.push_back({{"name", op.name}, {"arity", op.arity}});
  return {{"ops", ops}, {"constants", sig.constants}};
}

FiniteAlgebra algebra_from_json(const Json& j, const std::string& base_dir) {
  FiniteAlgebra a;
  a.sig = signature_from_json(field(j, "signature"));
  a.size = int_value(field(j, "size"), "size");
  if (a.size <= 0) fail("invalid-algebra", "size must be positive");

  const Json& tables = field(j, "tables");
  if (!tables.is_object()) fail("malformed-json", "tables must be an object");
  for (const auto& item : tables.items())
    if (a.sig.op_index(item.key()) < 0)
      fail("malformed-json", "table for unknown operation '" + item.key() + "'");
  a.tables.resize(a.sig.ops.size());
  for (std::size_t opi = 0; opi < a.sig.ops.size(); ++opi) {
    const OpSymbol& op = a.sig.ops[opi];
    auto it = tables.find(op.name);
    if (it == tables.end()) fail("malformed-json", "missing table for '" + op.name + "'");
    flatten_table(*it, op.arity, a.size, a.tables[opi], "table '" + op.name + "'");
  }

  const Json& consts = field(j, "consts");
  if (!consts.is_object()) fail("malformed-json", "consts must be an object");
  for (const auto& item : consts.items())
    if (a.sig.constant_index(item.key()) < 0)
      fail("malformed-json", "interpretation for unknown constant '" + item.key() + "'");
  a.const_interp.resize(a.sig.constants.size());
  for (std::size_t c = 0; c < a.sig.constants.size(); ++c) {
    auto it = consts.find(a.sig.constants[c]);
    if (it == consts.end())
      fail("malformed-json", "missing interpretation for constant '" + a.sig.constants[c] + "'");
    a.const_interp[c] = int_value(*it, "constant '" + a.sig.constants[c] + "'");
  }

  if (j.contains("embedding")) {
    const Json& ej = j.at("embedding");
    AEmbedding e;
    e.domain = load_algebra(resolve(base_dir, string_value(field(ej, "of"), "embedding of")));
    for (const Json& v : array_value(field(ej, "map"), "embedding map"))
      e.map.push_back(int_value(v, "embedding map entry"));
    if (static_cast<int>(e.map.size()) != e.domain.size)
      fail("invalid-embedding", "embedding map must list one image per element of A");
    if (ej.contains("constants")) {
      for (const Json& c : array_value(ej.at("constants"), "embedding constants")) {
        int idx = a.sig.constant_index(string_value(c, "embedding constant"));
        if (idx < 0) fail("invalid-embedding", "embedding names an unknown constant");
        e.a_constants.push_back(idx);
      }
    } else {
      // Default naming: the last |A| constants of the signature, in order.
      const int total = static_cast<int>(a.sig.constants.size());
      if (e.domain.size > total)
        fail("invalid-embedding", "signature has too few constants to name A's elements");
      for (int k = total - e.domain.size; k < total; ++k) e.a_constants.push_back(k);
    }
    if (e.a_constants.size() != e.map.size())
      fail("invalid-embedding", "embedding must name exactly one constant per element of A");
    a.embedding = std::make_shared<const AEmbedding>(std::move(e));
    CheckResult r = check_a_embedding(*a.embedding, a);
    if (!r.ok) fail("invalid-embedding", r.witness);
  }

  Diagnostic d = validate_algebra(a);
  if (!d.ok) fail("invalid-algebra", d.message);
  return a;
}

FiniteAlgebra load_algebra(const std::string& path) {
  static thread_local int depth = 0;
  if (depth > 8) fail("invalid-embedding", "embedding chain too deep at '" + path + "'");
  ++depth;
  FiniteAlgebra a;
  try {
    a = algebra_from_json(parse_json_text(read_text_file(path), path), directory_of(path));
  } catch (...) {
    --depth;
    throw;
  }
  --depth;
  return a;
}

Json algebra_to_json(const FiniteAlgebra& a, const std::string& embedding_of) {
  Json tables = Json::object();
  for (std::size_t opi = 0; opi < a.sig.ops.size(); ++opi) {
    std::size_t cursor = 0;
    tables[a.sig.ops[opi].name] = nest_table(a.tables[opi], a.sig.ops[opi].arity, a.size, cursor);
  }
  Json consts = Json::object();
  for (std::size_t c = 0; c < a.sig.constants.size(); ++c)
    consts[a.sig.constants[c]] = a.const_interp[c];
  Json j = {{"signature", signature_to_json(a.sig)},
            {"size", a.size},
            {"tables", tables},
            {"consts", consts}};
  if (a.embedding && !embedding_of.empty()) {
    Json names = Json::array();
    for (int idx : a.embedding->a_constants) names.push_back(a.sig.constants[idx]);
    j["embedding"] = {{"of", embedding_of}, {"map", a.embedding->map}, {"constants", names}};
  }
  return j;
}

void save_algebra(const FiniteAlgebra& a, const std::string& path,
                  const std::string& embedding_of) {
  save_json(algebra_to_json(a, embedding_of), path);
}

Congruence congruence_from_json(const Json& j, int carrier) {
  std::vector<int> classes(static_cast<std::size_t>(carrier), -1);
  int block = 0;
  for (const Json& b : array_value(field(j, "blocks"), "blocks")) {
    for (const Json& v : array_value(b, "block")) {
      int e = int_value(v, "block element");
      if (e < 0 || e >= carrier)
        fail("invalid-congruence", "element " + std::to_string(e) + " outside the carrier");
      if (classes[e] >= 0)
        fail("invalid-congruence", "element " + std::to_string(e) + " listed twice");
      classes[e] = block;
    }
    ++block;
  }
  for (int e = 0; e < carrier; ++e)
    if (classes[e] < 0)
      fail("invalid-congruence", "element " + std::to_string(e) + " missing from the blocks");
  return Congruence::from_classes(classes);
}

Congruence load_congruence(const std::string& path, int carrier) {
  return congruence_from_json(parse_json_text(read_text_file(path), path), carrier);
}

Json congruence_to_json(const Congruence& r) {
  return {{"blocks", r.block_list()}};
}

EqSystem system_from_json(const Json& j, const Signature& sig) {
  EqSystem s;
  s.sig = sig;
  for (const Json& v : array_value(field(j, "vars"), "vars")) {
    std::string name = string_value(v, "variable");
    if (sig.has_symbol(name))
      fail("duplicate-symbol", "variable '" + name + "' clashes with a signature symbol");
    if (std::find(s.vars.begin(), s.vars.end(), name) != s.vars.end())
      fail("duplicate-symbol", "variable '" + name + "' listed twice");
    s.vars.push_back(std::move(name));
  }
  for (const Json& e : array_value(field(j, "equations"), "equations")) {
    Equation eq{parse_term(string_value(field(e, "lhs"), "lhs"), sig, s.vars),
                parse_term(string_value(field(e, "rhs"), "rhs"), sig, s.vars)};
    s.equations.push_back(std::move(eq));
  }
  return s;
}

EqSystem load_system(const std::string& path, const Signature& sig) {
  return system_from_json(parse_json_text(read_text_file(path), path), sig);
}

Json system_to_json(const EqSystem& s) {
  Json eqs = Json::array();
  for (const Equation& e : s.equations)
    eqs.push_back({{"lhs", print_term(e.lhs, s.sig, s.vars)},
                   {"rhs", print_term(e.rhs, s.sig, s.vars)}});
  return {{"vars", s.vars}, {"equations", eqs}};
}

void save_system(const EqSystem& s, const std::string& path) {
  save_json(system_to_json(s), path);
}

AlgebraicSet set_from_json(const Json& j, int carrier_size) {
  AlgebraicSet y;
  y.carrier_size = carrier_size;
  y.n = int_value(field(j, "n"), "n");
  if (y.n < 0) fail("malformed-json", "n must be nonnegative");
  for (const Json& pj : array_value(field(j, "points"), "points")) {
    const Json& arr = array_value(pj, "point");
    if (static_cast<int>(arr.size()) != y.n)
      fail("malformed-json", "point arity differs from n");
    Assignment p;
    for (const Json& v : arr) {
      int e = int_value(v, "point entry");
      if (e < 0 || e >= carrier_size)
        fail("malformed-json", "point entry " + std::to_string(e) + " outside the carrier");
      p.push_back(e);
    }
    y.points.push_back(std::move(p));
  }
  std::sort(y.points.begin(), y.points.end());
  y.points.erase(std::unique(y.points.begin(), y.points.end()), y.points.end());
  return y;
}

AlgebraicSet load_set(const std::string& path, int carrier_size) {
  return set_from_json(parse_json_text(read_text_file(path), path), carrier_size);
}

Json set_to_json(const AlgebraicSet& y) {
  return {{"n", y.n}, {"points", y.points}};
}

void save_set(const AlgebraicSet& y, const std::string& path) {
  save_json(set_to_json(y), path);
}

void save_json(const Json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("io-error", "cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace uag
