#include "uag/term.hpp"

#include <algorithm>
#include <cctype>

#include "uag/algebra.hpp"
#include "uag/error.hpp"

namespace uag {

Term Term::var(int index) { return Term(Kind::Var, index, {}); }

Term Term::constant(int index) { return Term(Kind::Const, index, {}); }

Term Term::app(const Signature& sig, int op, std::vector<Term> children) {
  if (op < 0 || op >= static_cast<int>(sig.ops.size()))
    fail("unknown-symbol", "operation index " + std::to_string(op) + " out of range");
  const int arity = sig.ops[op].arity;
  if (arity != static_cast<int>(children.size()))
    fail("arity-mismatch", "operation '" + sig.ops[op].name + "' expects " +
                               std::to_string(arity) + " arguments, got " +
                               std::to_string(children.size()));
  return Term(Kind::App, op, std::move(children));
}

int Term::height() const {
  if (kind_ != Kind::App) return 0;
  int h = 0;
  for (const auto& c : children_) h = std::max(h, c.height());
  return h + 1;
}

bool Term::operator==(const Term& other) const {
  if (kind_ != other.kind_ || sym_ != other.sym_) return false;
  return children_ == other.children_;
}

namespace {

struct Parser {
  const std::string& text;
  const Signature& sig;
  const std::vector<std::string>& vars;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void error(const std::string& code, const std::string& what) {
    fail(code, what + " at position " + std::to_string(pos));
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size()) {
      char c = text[pos];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')
        ++pos;
      else
        break;
    }
    if (pos == start) error("parse-error", "expected a symbol name");
    return text.substr(start, pos - start);
  }

  Term term() {
    std::size_t name_pos = pos;
    std::string name = ident();
    skip_ws();
    if (pos < text.size() && text[pos] == '(') {
      int op = sig.op_index(name);
      if (op < 0) {
        pos = name_pos;
        if (sig.constant_index(name) >= 0)
          error("arity-mismatch", "constant '" + name + "' applied to arguments");
        error("unknown-symbol", "unknown operation '" + name + "'");
      }
      ++pos;  // '('
      std::vector<Term> args;
      args.push_back(term());
      skip_ws();
      while (pos < text.size() && text[pos] == ',') {
        ++pos;
        args.push_back(term());
        skip_ws();
      }
      if (pos >= text.size() || text[pos] != ')') error("parse-error", "expected ')'");
      ++pos;
      if (static_cast<int>(args.size()) != sig.ops[op].arity) {
        pos = name_pos;
        error("arity-mismatch", "operation '" + name + "' expects " +
                                    std::to_string(sig.ops[op].arity) + " arguments, got " +
                                    std::to_string(args.size()));
      }
      return Term::app(sig, op, std::move(args));
    }
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) return Term::var(static_cast<int>(i));
    int c = sig.constant_index(name);
    if (c >= 0) return Term::constant(c);
    if (sig.op_index(name) >= 0) {
      pos = name_pos;
      error("parse-error", "operation '" + name + "' used without arguments");
    }
    pos = name_pos;
    error("unknown-symbol", "unknown symbol '" + name + "'");
  }
};

}  // namespace

Term parse_term(const std::string& text, const Signature& sig,
                const std::vector<std::string>& vars) {
  Parser p{text, sig, vars};
  Term t = p.term();
  p.skip_ws();
  if (p.pos != text.size()) p.error("parse-error", "trailing input");
  return t;
}

std::string print_term(const Term& t, const Signature& sig,
                       const std::vector<std::string>& vars) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      int v = t.sym();
      if (v < 0 || v >= static_cast<int>(vars.size()))
        fail("unknown-symbol", "variable index " + std::to_string(v) + " out of range");
      return vars[v];
    }
    case Term::Kind::Const: {
      int c = t.sym();
      if (c < 0 || c >= static_cast<int>(sig.constants.size()))
        fail("unknown-symbol", "constant index " + std::to_string(c) + " out of range");
      return sig.constants[c];
    }
    case Term::Kind::App: {
      std::string out = sig.ops[t.sym()].name;
      out += '(';
      for (std::size_t i = 0; i < t.children().size(); ++i) {
        if (i) out += ',';
        out += print_term(t.children()[i], sig, vars);
      }
      out += ')';
      return out;
    }
  }
  fail("parse-error", "corrupt term node");
}

int evaluate(const Term& t, const FiniteAlgebra& algebra, const Assignment& asg) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      int v = t.sym();
      if (v < 0 || v >= static_cast<int>(asg.size()))
        fail("arity-mismatch", "variable x_" + std::to_string(v + 1) +
                                   " has no value in an assignment of length " +
                                   std::to_string(asg.size()));
      return asg[v];
    }
    case Term::Kind::Const:
      return algebra.constant(t.sym());
    case Term::Kind::App: {
      std::vector<int> args;
      args.reserve(t.children().size());
      for (const auto& c : t.children()) args.push_back(evaluate(c, algebra, asg));
      return algebra.apply(t.sym(), args);
    }
  }
  fail("parse-error", "corrupt term node");
}

std::vector<int> term_function(const Term& t, const std::vector<std::vector<int>>& y_points,
                               const FiniteAlgebra& algebra) {
  std::vector<int> values;
  values.reserve(y_points.size());
  for (const auto& p : y_points) values.push_back(evaluate(t, algebra, p));
  return values;
}

namespace {

std::int64_t sat_mul(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > INT64_MAX / b) return INT64_MAX;
  return a * b;
}

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  if (a > INT64_MAX - b) return INT64_MAX;
  return a + b;
}

std::int64_t sat_pow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

}  // namespace

std::int64_t count_terms(const Signature& sig, int n_vars, int depth) {
  // N(0) = n + c, N(d+1) = n + c + sum_f N(d)^arity(f)
  std::int64_t count = n_vars + static_cast<std::int64_t>(sig.constants.size());
  for (int d = 0; d < depth; ++d) {
    std::int64_t next = n_vars + static_cast<std::int64_t>(sig.constants.size());
    for (const auto& op : sig.ops) next = sat_add(next, sat_pow(count, op.arity));
    count = next;
    if (count == INT64_MAX) break;
  }
  return count;
}

std::vector<Term> enumerate_terms(const Signature& sig, int n_vars, int depth,
                                  std::int64_t cap) {
  if (depth < 0) fail("cap-exceeded", "negative depth");
  std::int64_t total = count_terms(sig, n_vars, depth);
  if (total > cap)
    fail("cap-exceeded", "enumeration of depth " + std::to_string(depth) + " would produce " +
                             (total == INT64_MAX ? std::string("more than 2^63")
                                                 : std::to_string(total)) +
                             " terms (cap " + std::to_string(cap) + ")");

  // Ops in (arity, index) order; enumeration order within a height level.
  std::vector<int> op_order(sig.ops.size());
  for (std::size_t i = 0; i < op_order.size(); ++i) op_order[i] = static_cast<int>(i);
  std::stable_sort(op_order.begin(), op_order.end(),
                   [&](int a, int b) { return sig.ops[a].arity < sig.ops[b].arity; });

  std::vector<Term> out;
  out.reserve(static_cast<std::size_t>(total));
  for (int v = 0; v < n_vars; ++v) out.push_back(Term::var(v));
  for (std::size_t c = 0; c < sig.constants.size(); ++c)
    out.push_back(Term::constant(static_cast<int>(c)));

  std::size_t prev_level_end = 0;  // start of the previous height level
  for (int h = 1; h <= depth; ++h) {
    std::size_t level_end = out.size();
    if (level_end == prev_level_end || level_end == 0) break;  // nothing new can appear
    for (int op : op_order) {
      const int arity = sig.ops[op].arity;
      // Row-major tuples over out[0..level_end), at least one argument from
      // the newest level [prev_level_end, level_end).
      std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
      while (true) {
        bool fresh = false;
        for (int k = 0; k < arity; ++k)
          if (idx[k] >= prev_level_end) fresh = true;
        if (fresh) {
          std::vector<Term> args;
          args.reserve(static_cast<std::size_t>(arity));
          for (int k = 0; k < arity; ++k) args.push_back(out[idx[k]]);
          out.push_back(Term::app(sig, op, std::move(args)));
        }
        int k = arity - 1;
        while (k >= 0 && ++idx[k] == level_end) idx[k--] = 0;
        if (k < 0) break;
      }
    }
    prev_level_end = level_end;
  }
  return out;
}

}  // namespace uag
