#include "uag/freealg.hpp"

#include <algorithm>
#include <map>

#include "uag/error.hpp"

namespace uag {

namespace {

bool same_tables(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  return a.sig == b.sig && a.size == b.size && a.tables == b.tables &&
         a.const_interp == b.const_interp;
}

bool same_coefficients(const AEmbedding& a, const AEmbedding& b) {
  return a.a_constants == b.a_constants && same_tables(a.domain, b.domain);
}

std::vector<std::string> default_vars(int n) {
  std::vector<std::string> v;
  v.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) v.push_back("x" + std::to_string(j));
  return v;
}

std::int64_t checked_pow(std::int64_t base, int exp, std::int64_t cap, const char* what) {
  std::int64_t r = 1;
  for (int k = 0; k < exp; ++k) {
    r *= base;
    if (r > cap) fail("cap-exceeded", std::string(what) + " exceeds the cap");
  }
  return r;
}

}  // namespace

FreeAlgebra free_algebra(const std::vector<FiniteAlgebra>& family, int n, bool with_a,
                         const Caps& caps) {
  if (family.empty()) fail("context-mismatch", "free algebra needs a nonempty family");
  if (n < 0) fail("context-mismatch", "negative generator count");
  const Signature& sig = family[0].sig;
  for (const FiniteAlgebra& b : family) {
    if (!(b.sig == sig)) fail("signature-mismatch", "family members must share one signature");
    if (b.size <= 0) fail("invalid-algebra", "empty carrier in the family");
  }
  if (with_a) {
    for (const FiniteAlgebra& b : family) {
      if (!b.embedding)
        fail("missing-embedding", "coefficient structure requested but a family member has none");
      if (!same_coefficients(*b.embedding, *family[0].embedding))
        fail("context-mismatch", "family members disagree on the coefficient algebra");
    }
  }

  FreeAlgebra out;
  out.n = n;
  out.family = family;

  // Coordinates (B, b̄): member-major, points lexicographic within a member.
  std::int64_t coord_count = 0;
  for (std::size_t mi = 0; mi < family.size(); ++mi) {
    const FiniteAlgebra& b = family[mi];
    std::int64_t count = checked_pow(b.size, n, caps.product_cap, "product index");
    if (coord_count + count > caps.product_cap)
      fail("cap-exceeded", "product index exceeds the cap");
    Assignment p(static_cast<std::size_t>(n), 0);
    for (std::int64_t i = 0; i < count; ++i) {
      out.diagram.push_back({static_cast<int>(mi), p});
      int k = n - 1;
      while (k >= 0 && ++p[k] == b.size) p[k--] = 0;
    }
    coord_count += count;
  }
  const int nc = static_cast<int>(out.diagram.size());

  std::map<std::vector<int>, int> index;
  auto intern = [&](std::vector<int> tuple, Term witness) -> int {
    auto it = index.find(tuple);
    if (it != index.end()) return it->second;
    if (static_cast<std::int64_t>(out.coords.size()) >= caps.closure_cap)
      fail("cap-exceeded", "free-algebra closure exceeds the cap");
    int id = static_cast<int>(out.coords.size());
    index.emplace(tuple, id);
    out.coords.push_back(std::move(tuple));
    out.witnesses.push_back(std::move(witness));
    return id;
  };

  out.generators.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    std::vector<int> t(static_cast<std::size_t>(nc));
    for (int ci = 0; ci < nc; ++ci) t[ci] = out.diagram[ci].point[j];
    out.generators[j] = intern(std::move(t), Term::var(j));
  }
  for (int c = 0; c < static_cast<int>(sig.constants.size()); ++c) {
    std::vector<int> t(static_cast<std::size_t>(nc));
    for (int ci = 0; ci < nc; ++ci) t[ci] = family[out.diagram[ci].member].constant(c);
    intern(std::move(t), Term::constant(c));
  }
  if (out.coords.empty())
    fail("context-mismatch", "no generators and no constants: the free algebra is empty");

  // Close under the operations, coordinatewise in each coordinate's member.
  std::size_t frontier_begin = 0;
  while (true) {
    const std::size_t frontier_end = out.coords.size();
    for (std::size_t opi = 0; opi < sig.ops.size(); ++opi) {
      const int arity = sig.ops[opi].arity;
      std::vector<std::size_t> arg(static_cast<std::size_t>(arity), 0);
      std::vector<int> args(static_cast<std::size_t>(arity));
      while (true) {
        bool touches = false;
        for (std::size_t a : arg)
          if (a >= frontier_begin) { touches = true; break; }
        if (touches) {
          std::vector<int> t(static_cast<std::size_t>(nc));
          for (int ci = 0; ci < nc; ++ci) {
            for (int k = 0; k < arity; ++k) args[k] = out.coords[arg[k]][ci];
            t[ci] = family[out.diagram[ci].member].apply(static_cast<int>(opi), args);
          }
          std::vector<Term> kids;
          kids.reserve(arg.size());
          for (std::size_t a : arg) kids.push_back(out.witnesses[a]);
          intern(std::move(t), Term::app(sig, static_cast<int>(opi), std::move(kids)));
        }
        int k = arity - 1;
        while (k >= 0 && ++arg[k] == frontier_end) arg[k--] = 0;
        if (k < 0) break;
      }
    }
    if (out.coords.size() == frontier_end) break;
    frontier_begin = frontier_end;
  }

  // Materialize the base algebra.
  const int size = static_cast<int>(out.coords.size());
  out.base.sig = sig;
  out.base.size = size;
  out.base.tables.resize(sig.ops.size());
  for (std::size_t opi = 0; opi < sig.ops.size(); ++opi) {
    const int arity = sig.ops[opi].arity;
    const std::int64_t rows = checked_pow(size, arity, caps.table_cap, "free-algebra table");
    auto& table = out.base.tables[opi];
    table.resize(static_cast<std::size_t>(rows));
    std::vector<std::size_t> arg(static_cast<std::size_t>(arity), 0);
    std::vector<int> args(static_cast<std::size_t>(arity));
    for (std::int64_t row = 0; row < rows; ++row) {
      std::vector<int> t(static_cast<std::size_t>(nc));
      for (int ci = 0; ci < nc; ++ci) {
        for (int k = 0; k < arity; ++k) args[k] = out.coords[arg[k]][ci];
        t[ci] = family[out.diagram[ci].member].apply(static_cast<int>(opi), args);
      }
      table[static_cast<std::size_t>(row)] = index.at(t);
      int k = arity - 1;
      while (k >= 0 && ++arg[k] == static_cast<std::size_t>(size)) arg[k--] = 0;
    }
  }
  out.base.const_interp.resize(sig.constants.size());
  for (int c = 0; c < static_cast<int>(sig.constants.size()); ++c) {
    std::vector<int> t(static_cast<std::size_t>(nc));
    for (int ci = 0; ci < nc; ++ci) t[ci] = family[out.diagram[ci].member].constant(c);
    out.base.const_interp[c] = index.at(t);
  }

  if (with_a) {
    AEmbedding e;
    e.domain = family[0].embedding->domain;
    e.a_constants = family[0].embedding->a_constants;
    e.map.resize(e.a_constants.size());
    for (std::size_t a = 0; a < e.a_constants.size(); ++a)
      e.map[a] = out.base.const_interp[e.a_constants[a]];
    std::vector<int> images = e.map;
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end())
      fail("internal-error", "diagonal coefficient map is not injective");
    out.base.embedding = std::make_shared<const AEmbedding>(std::move(e));
  }
  return out;
}

Homomorphism universal_map(const FreeAlgebra& f, const FiniteAlgebra& b,
                           const Assignment& point) {
  int mi = -1;
  for (std::size_t i = 0; i < f.family.size(); ++i)
    if (same_tables(f.family[i], b)) { mi = static_cast<int>(i); break; }
  if (mi < 0)
    fail("not-in-family", "universal maps are defined for generating family members only");
  if (static_cast<int>(point.size()) != f.n)
    fail("context-mismatch", "point arity differs from the generator count");
  for (int v : point)
    if (v < 0 || v >= b.size)
      fail("carrier-mismatch", "point entry outside the carrier");

  std::int64_t ci = 0;
  for (int i = 0; i < mi; ++i) {
    std::int64_t count = 1;
    for (int k = 0; k < f.n; ++k) count *= f.family[i].size;
    ci += count;
  }
  std::int64_t lin = 0;
  for (int k = 0; k < f.n; ++k) lin = lin * b.size + point[k];
  ci += lin;

  Homomorphism h;
  h.domain = f.base;
  h.codomain = b;
  h.map.resize(f.coords.size());
  for (std::size_t u = 0; u < f.coords.size(); ++u)
    h.map[u] = f.coords[u][static_cast<std::size_t>(ci)];
  return h;
}

GenericPoint generic_point(const FreeAlgebra& f, const Congruence& r) {
  QuotientResult q = quotient(f.base, r);
  GenericPoint g;
  g.point.resize(static_cast<std::size_t>(f.n));
  for (int j = 0; j < f.n; ++j) g.point[j] = q.projection.map[f.generators[j]];
  // Defining property: every element's witness lands in the element's block.
  for (std::size_t u = 0; u < f.witnesses.size(); ++u)
    if (evaluate(f.witnesses[u], q.algebra, g.point) != q.projection.map[u])
      fail("internal-error", "generic point failed its defining property");
  g.quotient = std::move(q.algebra);
  g.projection = std::move(q.projection);
  return g;
}

namespace {

// Witness equations that span the blocks of R: least member paired with
// every other member. Cutting these out is the same as cutting out all of
// R, by the kernel characterization.
EqSystem spanning_system(const FreeAlgebra& f, const Congruence& r,
                         const std::vector<std::string>& vars) {
  EqSystem s{f.base.sig, vars, {}};
  for (const auto& block : r.block_list())
    for (std::size_t i = 1; i < block.size(); ++i)
      s.equations.push_back({f.witnesses[block[0]], f.witnesses[block[i]]});
  return s;
}

}  // namespace

ForwardReport theorem_forward(const std::vector<FiniteAlgebra>& family, int n,
                              const EqSystem& system, const Caps& caps) {
  FreeAlgebra f = free_algebra(family, n, /*with_a=*/true, caps);
  if (!(system.sig == f.base.sig))
    fail("context-mismatch", "system signature differs from the family's");
  if (static_cast<int>(system.vars.size()) != n)
    fail("context-mismatch", "system arity differs from the generator count");

  // Θ_S: both sides of every equation evaluated into F at the generators.
  Assignment gens(f.generators.begin(), f.generators.end());
  std::vector<std::pair<int, int>> theta;
  theta.reserve(system.equations.size());
  for (const Equation& e : system.equations) {
    ensure_over(e.lhs, system.sig, n);
    ensure_over(e.rhs, system.sig, n);
    theta.emplace_back(evaluate(e.lhs, f.base, gens), evaluate(e.rhs, f.base, gens));
  }
  Congruence r = congruence_generated(f.base, theta);

  ForwardReport rep;
  rep.s0.sig = system.sig;
  rep.s0.vars = system.vars;
  ACongruenceResult ac = is_a_congruence(r, *f.base.embedding);
  if (!ac.ok) {
    // Inconsistent branch: S entails a₁ ≈ a₂, so no genuine A-algebra has
    // solutions. Confirmed per member by scan.
    rep.consistent = false;
    rep.merged_a = ac.witness;
    for (const FiniteAlgebra& b : family) {
      AlgebraicSet v = solve(b, system, caps);
      ForwardMemberCheck c{static_cast<std::int64_t>(v.points.size()), 0, v.points.empty()};
      rep.checks.push_back(c);
      rep.ok = rep.ok && c.passed;
    }
    return rep;
  }

  rep.s0 = spanning_system(f, r, system.vars);
  for (const FiniteAlgebra& b : family) {
    AlgebraicSet vs = solve(b, system, caps);
    AlgebraicSet v0 = solve(b, rep.s0, caps);
    ForwardMemberCheck c{static_cast<std::int64_t>(vs.points.size()),
                         static_cast<std::int64_t>(v0.points.size()),
                         vs.points == v0.points};
    rep.checks.push_back(c);
    rep.ok = rep.ok && c.passed;
  }
  return rep;
}

ConverseReport theorem_converse(const FreeAlgebra& f, const std::vector<Congruence>& chain,
                                const Caps& caps) {
  if (chain.empty()) fail("not-a-chain", "the congruence chain is empty");
  if (!f.base.embedding)
    fail("missing-embedding", "the free algebra carries no coefficient structure");
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (chain[i].carrier != f.base.size)
      fail("carrier-mismatch", "chain entry " + std::to_string(i) +
                                   " lives on the wrong carrier");
    if (!is_a_congruence(chain[i], *f.base.embedding).ok)
      fail("not-an-a-congruence",
           "chain entry " + std::to_string(i) + " merges two coefficient elements");
  }
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (!refines(chain[i - 1], chain[i]) || chain[i - 1] == chain[i])
      fail("not-a-chain", "chain is not strictly ascending at step " + std::to_string(i));

  const int k = static_cast<int>(chain.size());
  std::vector<GenericPoint> generic;
  generic.reserve(static_cast<std::size_t>(k));
  std::vector<FiniteAlgebra> factors;
  factors.reserve(static_cast<std::size_t>(k));
  for (const Congruence& r : chain) {
    generic.push_back(generic_point(f, r));
    factors.push_back(generic.back().quotient);
  }
  FiniteAlgebra big = product(factors, caps);

  const std::vector<std::string> vars = default_vars(f.n);
  std::vector<EqSystem> systems;
  systems.reserve(static_cast<std::size_t>(k));
  for (const Congruence& r : chain) systems.push_back(spanning_system(f, r, vars));
  std::vector<AlgebraicSet> vsets;
  vsets.reserve(static_cast<std::size_t>(k));
  for (const EqSystem& s : systems) vsets.push_back(solve(big, s, caps));

  // The paper's witness needs a trivial subalgebra of A for the padding.
  const std::vector<int> trivial = find_trivial_subalgebras(f.base.embedding->domain);
  std::vector<std::int64_t> stride(static_cast<std::size_t>(k), 1);
  for (int i = k - 2; i >= 0; --i) stride[i] = stride[i + 1] * factors[i + 1].size;

  ConverseReport rep;
  rep.b_size = big.size;
  rep.final_v_size = static_cast<std::int64_t>(vsets.back().points.size());
  for (int i = 0; i + 1 < k; ++i) {
    ConverseStep step;
    step.step = i;
    step.v_size = static_cast<std::int64_t>(vsets[i].points.size());
    step.proper = vsets[i + 1].points.size() < vsets[i].points.size();
    if (trivial.empty()) {
      step.witness = WitnessStatus::skipped;
    } else {
      // Generic point of F/R_i injected into B: factor i carries the generic
      // coordinates, every other factor the image of A's trivial element.
      Assignment g(static_cast<std::size_t>(f.n), 0);
      for (int j = 0; j < f.n; ++j) {
        std::int64_t v = 0;
        for (int l = 0; l < k; ++l) {
          int component = (l == i) ? generic[i].point[j]
                                   : factors[l].embedding->map[trivial.front()];
          v += stride[l] * component;
        }
        g[j] = static_cast<int>(v);
      }
      bool in_si = satisfies(big, systems[i], g);
      bool in_next = satisfies(big, systems[i + 1], g);
      step.witness =
          (in_si && !in_next) ? WitnessStatus::confirmed : WitnessStatus::failed;
    }
    rep.all_proper = rep.all_proper && step.proper;
    rep.steps.push_back(step);
  }
  return rep;
}

ConverseReport theorem_converse(const std::vector<FiniteAlgebra>& family, int n,
                                const std::vector<Congruence>& chain, const Caps& caps) {
  return theorem_converse(free_algebra(family, n, /*with_a=*/true, caps), chain, caps);
}

}  // namespace uag
