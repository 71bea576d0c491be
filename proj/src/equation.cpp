#include "uag/equation.hpp"

#include <algorithm>

#include "uag/error.hpp"

namespace uag {

void ensure_over(const Term& t, const Signature& sig, int n_vars) {
  switch (t.kind()) {
    case Term::Kind::Var:
      if (t.sym() < 0 || t.sym() >= n_vars)
        fail("context-mismatch", "variable index " + std::to_string(t.sym()) +
                                     " outside the ambient variable list");
      return;
    case Term::Kind::Const:
      if (t.sym() < 0 || t.sym() >= static_cast<int>(sig.constants.size()))
        fail("context-mismatch",
             "constant index " + std::to_string(t.sym()) + " outside the signature");
      return;
    case Term::Kind::App:
      if (t.sym() < 0 || t.sym() >= static_cast<int>(sig.ops.size()))
        fail("context-mismatch",
             "operation index " + std::to_string(t.sym()) + " outside the signature");
      if (static_cast<int>(t.children().size()) != sig.ops[t.sym()].arity)
        fail("context-mismatch", "operation '" + sig.ops[t.sym()].name + "' applied to " +
                                     std::to_string(t.children().size()) + " arguments");
      for (const Term& c : t.children()) ensure_over(c, sig, n_vars);
      return;
  }
}

bool satisfies(const FiniteAlgebra& algebra, const Equation& e, const Assignment& asg) {
  return evaluate(e.lhs, algebra, asg) == evaluate(e.rhs, algebra, asg);
}

bool satisfies(const FiniteAlgebra& algebra, const EqSystem& system, const Assignment& asg) {
  for (const Equation& e : system.equations)
    if (!satisfies(algebra, e, asg)) return false;
  return true;
}

IdealDecider::IdealDecider(const EqSystem& system)
    : sig_(&system.sig), n_vars_(static_cast<int>(system.vars.size())) {
  for (const Equation& e : system.equations) merge(add(e.lhs), add(e.rhs));
}

int IdealDecider::add(const Term& t) {
  ensure_over(t, *sig_, n_vars_);
  return intern(t);
}

bool IdealDecider::member(const Equation& e) { return same(add(e.lhs), add(e.rhs)); }

int IdealDecider::intern(const Term& t) {
  std::vector<int> key;
  int op, sym = -1;
  switch (t.kind()) {
    case Term::Kind::Var:   op = -1; sym = t.sym(); break;
    case Term::Kind::Const: op = -2; sym = t.sym(); break;
    default:                op = t.sym(); break;
  }
  key.push_back(op);
  if (op < 0) {
    key.push_back(sym);
  } else {
    for (const Term& c : t.children()) key.push_back(intern(c));
  }
  if (auto it = structural_.find(key); it != structural_.end()) return it->second;

  int id = uf_.add();
  Node node{op, sym, {}};
  if (op >= 0) node.kids.assign(key.begin() + 1, key.end());
  nodes_.push_back(std::move(node));
  uses_.emplace_back();
  structural_.emplace(std::move(key), id);

  if (op >= 0) {
    for (int k : nodes_[id].kids) uses_[uf_.find(k)].push_back(id);
    // Congruence at creation: an existing application with the same operator
    // and classwise-equal children forces this node into its class.
    auto ck = class_key(id);
    if (auto it = class_table_.find(ck); it != class_table_.end())
      merge(id, it->second);
    else
      class_table_.emplace(std::move(ck), id);
  }
  return id;
}

std::vector<int> IdealDecider::class_key(int node) {
  std::vector<int> key{nodes_[node].op};
  for (int k : nodes_[node].kids) key.push_back(uf_.find(k));
  return key;
}

void IdealDecider::merge(int a, int b) {
  std::vector<std::pair<int, int>> pending{{a, b}};
  while (!pending.empty()) {
    auto [x, y] = pending.back();
    pending.pop_back();
    int rx = uf_.find(x), ry = uf_.find(y);
    if (rx == ry) continue;
    uf_.unite(rx, ry);
    int kept = uf_.find(rx), gone = (kept == rx) ? ry : rx;
    // Re-key the absorbed class's parents; collisions are new congruences.
    std::vector<int> moved = std::move(uses_[gone]);
    uses_[gone].clear();
    for (int p : moved) {
      auto ck = class_key(p);
      auto [it, fresh] = class_table_.try_emplace(std::move(ck), p);
      if (!fresh && !uf_.same(it->second, p)) pending.emplace_back(it->second, p);
      uses_[kept].push_back(p);
    }
  }
}

bool ideal_member(const EqSystem& system, const Equation& e) {
  IdealDecider dec(system);
  return dec.member(e);
}

AIdealResult is_a_ideal(const EqSystem& system, const std::vector<int>& a_constants) {
  for (int c : a_constants)
    if (c < 0 || c >= static_cast<int>(system.sig.constants.size()))
      fail("context-mismatch",
           "constant index " + std::to_string(c) + " outside the signature");
  IdealDecider dec(system);
  std::vector<int> node(a_constants.size());
  for (std::size_t i = 0; i < a_constants.size(); ++i)
    node[i] = dec.add(Term::constant(a_constants[i]));
  for (std::size_t i = 0; i < a_constants.size(); ++i)
    for (std::size_t j = i + 1; j < a_constants.size(); ++j)
      if (a_constants[i] != a_constants[j] && dec.same(node[i], node[j]))
        return {false, {a_constants[i], a_constants[j]}};
  return {};
}

std::optional<ConsistencyWitness> consistent_over(const std::vector<FiniteAlgebra>& family,
                                                  const EqSystem& system, const Caps& caps) {
  const int n = static_cast<int>(system.vars.size());
  for (std::size_t fi = 0; fi < family.size(); ++fi) {
    const FiniteAlgebra& b = family[fi];
    std::int64_t points = 1;
    for (int k = 0; k < n; ++k) {
      points *= b.size;
      if (points > caps.scan_cap)
        fail("cap-exceeded", "solution scan of " + std::to_string(b.size) + "^" +
                                 std::to_string(n) + " points exceeds the cap");
    }
    Assignment asg(static_cast<std::size_t>(n), 0);
    for (std::int64_t step = 0; step < points; ++step) {
      if (satisfies(b, system, asg)) return ConsistencyWitness{static_cast<int>(fi), asg};
      int k = n - 1;
      while (k >= 0 && ++asg[k] == b.size) asg[k--] = 0;
    }
  }
  return std::nullopt;
}

}  // namespace uag
