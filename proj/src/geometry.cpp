#include "uag/geometry.hpp"

#include <algorithm>
#include <map>
#include <thread>

#include "uag/error.hpp"

namespace uag {

namespace {

// m^n with the scan cap enforced.
std::int64_t scan_size(int m, int n, const Caps& caps) {
  if (m <= 0) fail("invalid-algebra", "empty carrier");
  std::int64_t total = 1;
  for (int k = 0; k < n; ++k) {
    total *= m;
    if (total > caps.scan_cap)
      fail("cap-exceeded", "point scan of " + std::to_string(m) + "^" + std::to_string(n) +
                               " exceeds the cap of " + std::to_string(caps.scan_cap));
  }
  return total;
}

Assignment decode_point(std::int64_t idx, int n, int m) {
  Assignment p(static_cast<std::size_t>(n));
  for (int k = n - 1; k >= 0; --k) {
    p[k] = static_cast<int>(idx % m);
    idx /= m;
  }
  return p;
}

void advance_point(Assignment& p, int m) {
  int k = static_cast<int>(p.size()) - 1;
  while (k >= 0 && ++p[k] == m) p[k--] = 0;
}

void require_same_context(const std::vector<EqSystem>& systems) {
  for (std::size_t i = 1; i < systems.size(); ++i)
    if (!(systems[i].sig == systems[0].sig) || systems[i].vars != systems[0].vars)
      fail("context-mismatch", "systems disagree on signature or variables");
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

bool AlgebraicSet::contains(const Assignment& p) const {
  return std::binary_search(points.begin(), points.end(), p);
}

std::vector<Assignment> ClosedSet::point_union() const {
  for (std::size_t i = 1; i < components.size(); ++i)
    if (components[i].n != components[0].n ||
        components[i].carrier_size != components[0].carrier_size)
      fail("context-mismatch", "union components live in different spaces");
  std::vector<Assignment> all;
  for (const AlgebraicSet& c : components)
    all.insert(all.end(), c.points.begin(), c.points.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

AlgebraicSet solve(const FiniteAlgebra& b, const EqSystem& system, const Caps& caps, int jobs) {
  const int n = static_cast<int>(system.vars.size());
  for (const Equation& e : system.equations) {
    ensure_over(e.lhs, system.sig, n);
    ensure_over(e.rhs, system.sig, n);
  }
  if (!(b.sig == system.sig))
    fail("context-mismatch", "algebra does not interpret the system's signature");

  AlgebraicSet out;
  out.carrier_size = b.size;
  out.n = n;
  out.defining = system;
  const std::int64_t total = scan_size(b.size, n, caps);

  auto scan_range = [&](std::int64_t lo, std::int64_t hi, std::vector<Assignment>& sink) {
    Assignment p = decode_point(lo, n, b.size);
    for (std::int64_t i = lo; i < hi; ++i) {
      if (satisfies(b, system, p)) sink.push_back(p);
      advance_point(p, b.size);
    }
  };

  if (jobs <= 1 || total < 2 * jobs) {
    scan_range(0, total, out.points);
    return out;
  }

  const int workers = static_cast<int>(std::min<std::int64_t>(jobs, total));
  std::vector<std::vector<Assignment>> parts(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    std::int64_t lo = total * w / workers, hi = total * (w + 1) / workers;
    pool.emplace_back([&, w, lo, hi] { scan_range(lo, hi, parts[w]); });
  }
  for (auto& t : pool) t.join();
  for (auto& part : parts)
    out.points.insert(out.points.end(), part.begin(), part.end());
  return out;
}

AlgebraicSet intersect_by_union(const FiniteAlgebra& b, const Signature& sig,
                                const std::vector<std::string>& vars,
                                const std::vector<EqSystem>& systems, const Caps& caps) {
  require_same_context(systems);
  EqSystem merged{sig, vars, {}};
  for (const EqSystem& s : systems) {
    if (!(s.sig == sig) || s.vars != vars)
      fail("context-mismatch", "system disagrees with the supplied context");
    merged.equations.insert(merged.equations.end(), s.equations.begin(), s.equations.end());
  }
  AlgebraicSet united = solve(b, merged, caps);

  // Self-check: the union-system solve must match the pointwise intersection.
  std::vector<Assignment> meet;
  bool first = true;
  for (const EqSystem& s : systems) {
    AlgebraicSet vi = solve(b, s, caps);
    if (first) {
      meet = vi.points;
      first = false;
    } else {
      std::vector<Assignment> next;
      std::set_intersection(meet.begin(), meet.end(), vi.points.begin(), vi.points.end(),
                            std::back_inserter(next));
      meet = std::move(next);
    }
  }
  if (!first && meet != united.points)
    fail("internal-error", "union-system solve disagrees with pointwise intersection");
  return united;
}

bool radical_member(const FiniteAlgebra& b, const AlgebraicSet& y, const Equation& e) {
  ensure_over(e.lhs, b.sig, y.n);
  ensure_over(e.rhs, b.sig, y.n);
  for (const Assignment& p : y.points)
    if (evaluate(e.lhs, b, p) != evaluate(e.rhs, b, p)) return false;
  return true;
}

CoordinateAlgebra coordinate_algebra(const FiniteAlgebra& b, const AlgebraicSet& y,
                                     const Caps& caps) {
  if (y.points.empty())
    fail("empty-set", "coordinate algebra of the empty set is undefined");
  const int np = static_cast<int>(y.points.size());

  CoordinateAlgebra out;
  out.y_points = y.points;
  std::map<std::vector<int>, int> index;
  auto intern = [&](std::vector<int> tuple, Term witness) {
    auto it = index.find(tuple);
    if (it != index.end()) return;
    if (static_cast<std::int64_t>(out.tuples.size()) >= caps.closure_cap)
      fail("cap-exceeded", "term-function closure exceeds the cap");
    index.emplace(tuple, static_cast<int>(out.tuples.size()));
    out.tuples.push_back(std::move(tuple));
    out.witnesses.push_back(std::move(witness));
  };

  for (int j = 0; j < y.n; ++j) {
    std::vector<int> t(static_cast<std::size_t>(np));
    for (int p = 0; p < np; ++p) t[p] = y.points[p][j];
    intern(std::move(t), Term::var(j));
  }
  for (int c = 0; c < static_cast<int>(b.sig.constants.size()); ++c)
    intern(std::vector<int>(static_cast<std::size_t>(np), b.constant(c)), Term::constant(c));
  if (out.tuples.empty())
    fail("empty-set", "no term functions: the context has no variables or constants");

  // Pointwise closure, round by round; each round only combines argument
  // tuples touching the previous round's new elements, so witnesses come out
  // height-minimal per round discipline.
  std::size_t frontier_begin = 0;
  while (true) {
    const std::size_t frontier_end = out.tuples.size();
    for (std::size_t opi = 0; opi < b.sig.ops.size(); ++opi) {
      const int arity = b.sig.ops[opi].arity;
      std::vector<std::size_t> arg(static_cast<std::size_t>(arity), 0);
      while (true) {
        bool touches = false;
        for (std::size_t a : arg)
          if (a >= frontier_begin) { touches = true; break; }
        if (touches || frontier_begin == 0) {
          std::vector<int> t(static_cast<std::size_t>(np));
          std::vector<int> args(static_cast<std::size_t>(arity));
          for (int p = 0; p < np; ++p) {
            for (int k = 0; k < arity; ++k) args[k] = out.tuples[arg[k]][p];
            t[p] = b.apply(static_cast<int>(opi), args);
          }
          std::vector<Term> kids;
          kids.reserve(arg.size());
          for (std::size_t a : arg) kids.push_back(out.witnesses[a]);
          intern(std::move(t), Term::app(b.sig, static_cast<int>(opi), std::move(kids)));
        }
        int k = arity - 1;
        while (k >= 0 && ++arg[k] == frontier_end) arg[k--] = 0;
        if (k < 0) break;
      }
    }
    if (out.tuples.size() == frontier_end) break;
    frontier_begin = frontier_end;
  }

  // Materialize the closure as a finite algebra.
  const int size = static_cast<int>(out.tuples.size());
  out.algebra.sig = b.sig;
  out.algebra.size = size;
  out.algebra.tables.resize(b.sig.ops.size());
  for (std::size_t opi = 0; opi < b.sig.ops.size(); ++opi) {
    const int arity = b.sig.ops[opi].arity;
    const std::int64_t entries =
        checked_pow(size, arity, caps.table_cap, "coordinate-algebra table");
    auto& table = out.algebra.tables[opi];
    table.resize(static_cast<std::size_t>(entries));
    std::vector<std::size_t> arg(static_cast<std::size_t>(arity), 0);
    std::vector<int> args(static_cast<std::size_t>(arity));
    for (std::int64_t row = 0; row < entries; ++row) {
      std::vector<int> t(static_cast<std::size_t>(np));
      for (int p = 0; p < np; ++p) {
        for (int k = 0; k < arity; ++k) args[k] = out.tuples[arg[k]][p];
        t[p] = b.apply(static_cast<int>(opi), args);
      }
      table[static_cast<std::size_t>(row)] = index.at(t);
      int k = arity - 1;
      while (k >= 0 && ++arg[k] == static_cast<std::size_t>(size)) arg[k--] = 0;
    }
  }
  out.algebra.const_interp.resize(b.sig.constants.size());
  for (int c = 0; c < static_cast<int>(b.sig.constants.size()); ++c)
    out.algebra.const_interp[c] =
        index.at(std::vector<int>(static_cast<std::size_t>(np), b.constant(c)));

  // The coefficient structure carries over: a acts as the constant function
  // of its image, which is injective because Y is nonempty.
  if (b.embedding) {
    AEmbedding e;
    e.domain = b.embedding->domain;
    e.a_constants = b.embedding->a_constants;
    e.map.resize(b.embedding->map.size());
    for (std::size_t k = 0; k < b.embedding->map.size(); ++k)
      e.map[k] =
          index.at(std::vector<int>(static_cast<std::size_t>(np), b.embedding->map[k]));
    out.algebra.embedding = std::make_shared<AEmbedding>(std::move(e));
  }
  return out;
}

namespace {

// Does the generator assignment x_j -> c extend to a homomorphism from the
// term functions on Y into B? Equivalently: no two term functions agree on Y
// yet split at c. Runs the pointwise closure over Y ∪ {c} and watches for a
// split, keyed by the Y-restriction.
bool extends_over(const FiniteAlgebra& b, const std::vector<Assignment>& y_points,
                  const Assignment& c, const Caps& caps) {
  const int np = static_cast<int>(y_points.size());
  std::vector<std::vector<int>> tuples;  // tuple[0..np) over Y, tuple[np] at c
  std::map<std::vector<int>, int> index;
  std::map<std::vector<int>, int> at_c;  // Y-restriction -> tracked value
  bool split = false;

  auto intern = [&](std::vector<int> tuple) {
    if (index.count(tuple)) return;
    std::vector<int> restriction(tuple.begin(), tuple.begin() + np);
    auto [it, fresh] = at_c.try_emplace(std::move(restriction), tuple[np]);
    if (!fresh && it->second != tuple[np]) {
      split = true;
      return;
    }
    if (static_cast<std::int64_t>(tuples.size()) >= caps.closure_cap)
      fail("cap-exceeded", "closure test exceeds the cap");
    index.emplace(tuple, static_cast<int>(tuples.size()));
    tuples.push_back(std::move(tuple));
  };

  const int n = static_cast<int>(c.size());
  for (int j = 0; j < n && !split; ++j) {
    std::vector<int> t(static_cast<std::size_t>(np) + 1);
    for (int p = 0; p < np; ++p) t[p] = y_points[p][j];
    t[np] = c[j];
    intern(std::move(t));
  }
  for (int ci = 0; ci < static_cast<int>(b.sig.constants.size()) && !split; ++ci)
    intern(std::vector<int>(static_cast<std::size_t>(np) + 1, b.constant(ci)));

  std::size_t frontier_begin = 0;
  while (!split) {
    const std::size_t frontier_end = tuples.size();
    for (std::size_t opi = 0; opi < b.sig.ops.size() && !split; ++opi) {
      const int arity = b.sig.ops[opi].arity;
      std::vector<std::size_t> arg(static_cast<std::size_t>(arity), 0);
      std::vector<int> args(static_cast<std::size_t>(arity));
      while (!split) {
        bool touches = false;
        for (std::size_t a : arg)
          if (a >= frontier_begin) { touches = true; break; }
        if (touches || frontier_begin == 0) {
          std::vector<int> t(static_cast<std::size_t>(np) + 1);
          for (int p = 0; p <= np; ++p) {
            for (int k = 0; k < arity; ++k) args[k] = tuples[arg[k]][p];
            t[p] = b.apply(static_cast<int>(opi), args);
          }
          intern(std::move(t));
        }
        int k = arity - 1;
        while (k >= 0 && ++arg[k] == frontier_end) arg[k--] = 0;
        if (k < 0) break;
      }
    }
    if (split || tuples.size() == frontier_end) break;
    frontier_begin = frontier_end;
  }
  return !split;
}

}  // namespace

AlgebraicSet zariski_closure(const FiniteAlgebra& b, const AlgebraicSet& y, const Caps& caps) {
  AlgebraicSet out;
  out.carrier_size = b.size;
  out.n = y.n;
  if (y.points.empty()) return out;  // the empty set is closed

  const std::int64_t total = scan_size(b.size, y.n, caps);
  Assignment c = decode_point(0, y.n, b.size);
  for (std::int64_t i = 0; i < total; ++i) {
    if (y.contains(c) || extends_over(b, y.points, c, caps)) out.points.push_back(c);
    advance_point(c, b.size);
  }
  return out;
}

Certificate noetherian_certificate(const FiniteAlgebra& b, const EqSystem& system,
                                   const Caps& caps) {
  const int n = static_cast<int>(system.vars.size());
  for (const Equation& e : system.equations) {
    ensure_over(e.lhs, system.sig, n);
    ensure_over(e.rhs, system.sig, n);
  }
  if (!(b.sig == system.sig))
    fail("context-mismatch", "algebra does not interpret the system's signature");

  const std::int64_t total = scan_size(b.size, n, caps);
  std::vector<Assignment> running;
  running.reserve(static_cast<std::size_t>(total));
  Assignment p = decode_point(0, n, b.size);
  for (std::int64_t i = 0; i < total; ++i) {
    running.push_back(p);
    advance_point(p, b.size);
  }

  Certificate cert;
  for (std::size_t i = 0; i < system.equations.size(); ++i) {
    const Equation& e = system.equations[i];
    std::vector<Assignment> filtered;
    filtered.reserve(running.size());
    for (const Assignment& q : running)
      if (satisfies(b, e, q)) filtered.push_back(q);
    if (filtered.size() < running.size()) {
      cert.kept.push_back(static_cast<int>(i));
      running = std::move(filtered);
    }
  }
  cert.solution.carrier_size = b.size;
  cert.solution.n = n;
  cert.solution.points = std::move(running);
  cert.solution.defining = system;
  return cert;
}

DescendingChain descending_chain(const FiniteAlgebra& b, const std::vector<EqSystem>& systems,
                                 const Caps& caps) {
  require_same_context(systems);
  for (std::size_t i = 1; i < systems.size(); ++i) {
    const auto& prev = systems[i - 1].equations;
    const auto& cur = systems[i].equations;
    if (prev.size() > cur.size())
      fail("not-a-chain", "system " + std::to_string(i) + " is shorter than its predecessor");
    for (std::size_t k = 0; k < prev.size(); ++k)
      if (!(prev[k].lhs == cur[k].lhs) || !(prev[k].rhs == cur[k].rhs))
        fail("not-a-chain",
             "system " + std::to_string(i) + " does not extend its predecessor at index " +
                 std::to_string(k));
  }

  DescendingChain chain;
  for (std::size_t i = 0; i < systems.size(); ++i) {
    if (i == 0) {
      chain.sets.push_back(solve(b, systems[0], caps));
      continue;
    }
    // V_i = V_{i-1} filtered by the new suffix; valid because systems nest.
    AlgebraicSet next;
    next.carrier_size = b.size;
    next.n = chain.sets.back().n;
    next.defining = systems[i];
    const std::size_t from = systems[i - 1].equations.size();
    for (const Assignment& q : chain.sets.back().points) {
      bool keep = true;
      for (std::size_t k = from; k < systems[i].equations.size(); ++k)
        if (!satisfies(b, systems[i].equations[k], q)) { keep = false; break; }
      if (keep) next.points.push_back(q);
    }
    chain.proper.push_back(next.points.size() < chain.sets.back().points.size());
    chain.sets.push_back(std::move(next));
  }
  return chain;
}

}  // namespace uag
