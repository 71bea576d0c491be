#include "uag/congruence.hpp"

#include <algorithm>
#include <set>

#include "uag/error.hpp"
#include "uag/union_find.hpp"

namespace uag {

namespace {

std::vector<int> canonical_blocks(int carrier, const std::vector<int>& raw) {
  std::vector<int> rename(static_cast<std::size_t>(carrier), -1);
  std::vector<int> out(static_cast<std::size_t>(carrier));
  int next = 0;
  for (int e = 0; e < carrier; ++e) {
    int c = raw[e];
    if (rename[c] < 0) rename[c] = next++;
    out[e] = rename[c];
  }
  return out;
}

std::string tuple_str(const std::vector<int>& args) {
  std::string s = "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(args[i]);
  }
  return s + ")";
}

}  // namespace

Congruence Congruence::diagonal(int carrier) {
  Congruence r;
  r.carrier = carrier;
  r.block_of.resize(static_cast<std::size_t>(carrier));
  for (int i = 0; i < carrier; ++i) r.block_of[i] = i;
  return r;
}

Congruence Congruence::all_pairs(int carrier) {
  Congruence r;
  r.carrier = carrier;
  r.block_of.assign(static_cast<std::size_t>(carrier), 0);
  return r;
}

Congruence Congruence::from_classes(const std::vector<int>& raw) {
  Congruence r;
  r.carrier = static_cast<int>(raw.size());
  std::vector<int> squeezed = raw;
  // class ids may be sparse; remap through a dense table first
  std::vector<int> sorted_ids = raw;
  std::sort(sorted_ids.begin(), sorted_ids.end());
  sorted_ids.erase(std::unique(sorted_ids.begin(), sorted_ids.end()), sorted_ids.end());
  for (auto& c : squeezed)
    c = static_cast<int>(std::lower_bound(sorted_ids.begin(), sorted_ids.end(), c) -
                         sorted_ids.begin());
  r.block_of = canonical_blocks(r.carrier, squeezed);
  return r;
}

int Congruence::block_count() const {
  int m = 0;
  for (int b : block_of) m = std::max(m, b + 1);
  return m;
}

std::vector<std::vector<int>> Congruence::block_list() const {
  std::vector<std::vector<int>> blocks(static_cast<std::size_t>(block_count()));
  for (int e = 0; e < carrier; ++e) blocks[block_of[e]].push_back(e);
  return blocks;
}

bool Congruence::operator<(const Congruence& other) const {
  if (carrier != other.carrier) return carrier < other.carrier;
  return block_of < other.block_of;
}

bool refines(const Congruence& fine, const Congruence& coarse) {
  if (fine.carrier != coarse.carrier) fail("carrier-mismatch", "congruences on different carriers");
  for (int a = 0; a < fine.carrier; ++a)
    for (int b = a + 1; b < fine.carrier; ++b)
      if (fine.related(a, b) && !coarse.related(a, b)) return false;
  return true;
}

bool congruence_compatible(const FiniteAlgebra& algebra, const Congruence& r,
                           std::string* witness) {
  // A partition is compatible iff f(a_1..a_k) ~ f(rep(a_1)..rep(a_k)) for all
  // tuples; blockwise-related tuples then connect through the rep tuple.
  auto blocks = r.block_list();
  std::vector<int> rep(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) rep[b] = blocks[b].front();
  for (std::size_t opi = 0; opi < algebra.sig.ops.size(); ++opi) {
    const int arity = algebra.sig.ops[opi].arity;
    std::vector<int> args(static_cast<std::size_t>(arity), 0);
    std::vector<int> reps(static_cast<std::size_t>(arity));
    while (true) {
      for (int k = 0; k < arity; ++k) reps[k] = rep[r.block_of[args[k]]];
      int u = algebra.apply(static_cast<int>(opi), args);
      int v = algebra.apply(static_cast<int>(opi), reps);
      if (r.block_of[u] != r.block_of[v]) {
        if (witness)
          *witness = "op '" + algebra.sig.ops[opi].name + "' at " + tuple_str(args) +
                     " vs representatives " + tuple_str(reps) + " lands in blocks " +
                     std::to_string(r.block_of[u]) + " and " + std::to_string(r.block_of[v]);
        return false;
      }
      int k = arity - 1;
      while (k >= 0 && ++args[k] == algebra.size) args[k--] = 0;
      if (k < 0) break;
    }
  }
  return true;
}

Congruence congruence_generated(const FiniteAlgebra& algebra,
                                const std::vector<std::pair<int, int>>& pairs) {
  UnionFind uf(algebra.size);
  for (auto [a, b] : pairs) {
    if (a < 0 || a >= algebra.size || b < 0 || b >= algebra.size)
      fail("carrier-mismatch", "pair (" + std::to_string(a) + "," + std::to_string(b) +
                                   ") outside the carrier");
    uf.unite(a, b);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t opi = 0; opi < algebra.sig.ops.size(); ++opi) {
      const int arity = algebra.sig.ops[opi].arity;
      std::vector<int> args(static_cast<std::size_t>(arity), 0);
      std::vector<int> reps(static_cast<std::size_t>(arity));
      while (true) {
        for (int k = 0; k < arity; ++k) reps[k] = uf.find(args[k]);
        int u = algebra.apply(static_cast<int>(opi), args);
        int v = algebra.apply(static_cast<int>(opi), reps);
        if (uf.unite(u, v)) changed = true;
        int k = arity - 1;
        while (k >= 0 && ++args[k] == algebra.size) args[k--] = 0;
        if (k < 0) break;
      }
    }
  }
  std::vector<int> classes(static_cast<std::size_t>(algebra.size));
  for (int e = 0; e < algebra.size; ++e) classes[e] = uf.find(e);
  Congruence r = Congruence::from_classes(classes);
  return r;
}

ACongruenceResult is_a_congruence(const Congruence& r, const AEmbedding& e) {
  for (std::size_t x = 0; x < e.map.size(); ++x)
    for (std::size_t y = x + 1; y < e.map.size(); ++y)
      if (r.block_of[e.map[x]] == r.block_of[e.map[y]])
        return {false, {static_cast<int>(x), static_cast<int>(y)}};
  return {};
}

Congruence meet(const Congruence& r1, const Congruence& r2) {
  if (r1.carrier != r2.carrier) fail("carrier-mismatch", "meet of congruences on different carriers");
  std::vector<int> classes(static_cast<std::size_t>(r1.carrier));
  for (int e = 0; e < r1.carrier; ++e)
    classes[e] = r1.block_of[e] * (r2.block_count() + 1) + r2.block_of[e];
  return Congruence::from_classes(classes);
}

Congruence join(const FiniteAlgebra& algebra, const Congruence& r1, const Congruence& r2) {
  if (r1.carrier != r2.carrier || r1.carrier != algebra.size)
    fail("carrier-mismatch", "join of congruences on different carriers");
  std::vector<std::pair<int, int>> pairs;
  for (const auto& r : {r1, r2})
    for (const auto& block : r.block_list())
      for (std::size_t i = 1; i < block.size(); ++i) pairs.emplace_back(block[0], block[i]);
  return congruence_generated(algebra, pairs);
}

std::vector<Congruence> congruence_lattice(const FiniteAlgebra& algebra, const Caps& caps) {
  if (algebra.size > caps.lattice_cap)
    fail("cap-exceeded", "congruence lattice enumeration capped at carrier " +
                             std::to_string(caps.lattice_cap) + ", got " +
                             std::to_string(algebra.size));
  std::set<Congruence> known;
  known.insert(Congruence::diagonal(algebra.size));
  for (int a = 0; a < algebra.size; ++a)
    for (int b = a + 1; b < algebra.size; ++b)
      known.insert(congruence_generated(algebra, {{a, b}}));

  // join-closure
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Congruence> snapshot(known.begin(), known.end());
    for (std::size_t i = 0; i < snapshot.size(); ++i)
      for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
        Congruence joined = join(algebra, snapshot[i], snapshot[j]);
        if (known.insert(joined).second) changed = true;
      }
  }

  std::vector<Congruence> out(known.begin(), known.end());
  std::sort(out.begin(), out.end(), [](const Congruence& a, const Congruence& b) {
    if (a.block_count() != b.block_count()) return a.block_count() > b.block_count();
    return a.block_of < b.block_of;
  });
  return out;
}

std::vector<std::vector<Congruence>> ascending_chains(const FiniteAlgebra& algebra,
                                                      const AEmbedding* a_structure, int maxlen,
                                                      const Caps& caps) {
  std::vector<Congruence> poset = congruence_lattice(algebra, caps);
  if (a_structure) {
    std::erase_if(poset, [&](const Congruence& r) { return !is_a_congruence(r, *a_structure).ok; });
  }
  const int n = static_cast<int>(poset.size());
  std::vector<std::vector<bool>> lt(static_cast<std::size_t>(n),
                                    std::vector<bool>(static_cast<std::size_t>(n), false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) lt[i][j] = refines(poset[i], poset[j]) && !(poset[i] == poset[j]);

  // covers: i < j with nothing strictly between
  auto covers = [&](int i, int j) {
    if (!lt[i][j]) return false;
    for (int k = 0; k < n; ++k)
      if (lt[i][k] && lt[k][j]) return false;
    return true;
  };

  std::vector<std::vector<Congruence>> chains;
  std::vector<int> stack;
  auto is_minimal = [&](int i) {
    for (int k = 0; k < n; ++k)
      if (lt[k][i]) return false;
    return true;
  };
  auto is_maximal = [&](int i) {
    for (int k = 0; k < n; ++k)
      if (lt[i][k]) return false;
    return true;
  };

  auto emit = [&]() {
    if (static_cast<int>(stack.size()) > maxlen) return;
    std::vector<Congruence> chain;
    chain.reserve(stack.size());
    for (int i : stack) chain.push_back(poset[i]);
    chains.push_back(std::move(chain));
  };

  // depth-first over the cover relation, poset index order for determinism
  auto dfs = [&](auto&& self, int i) -> void {
    stack.push_back(i);
    if (is_maximal(i)) {
      emit();
    } else {
      for (int j = 0; j < n; ++j)
        if (covers(i, j)) self(self, j);
    }
    stack.pop_back();
  };
  for (int i = 0; i < n; ++i)
    if (is_minimal(i)) dfs(dfs, i);
  return chains;
}

}  // namespace uag
