#include "uag/algebra.hpp"

#include <algorithm>
#include <set>

#include "uag/congruence.hpp"
#include "uag/error.hpp"

namespace uag {

namespace {

std::int64_t table_entries(int size, int arity) {
  std::int64_t n = 1;
  for (int i = 0; i < arity; ++i) {
    if (size != 0 && n > INT64_MAX / size) return INT64_MAX;
    n *= size;
  }
  return n;
}

std::string tuple_str(std::span<const int> args) {
  std::string s = "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(args[i]);
  }
  return s + ")";
}

}  // namespace

int FiniteAlgebra::apply(int op, std::span<const int> args) const {
  const auto& table = tables[static_cast<std::size_t>(op)];
  std::size_t index = 0;
  for (int a : args) index = index * static_cast<std::size_t>(size) + static_cast<std::size_t>(a);
  return table[index];
}

Diagnostic validate_algebra(const FiniteAlgebra& algebra) {
  Diagnostic d = validate(algebra.sig);
  if (!d.ok) return d;
  if (algebra.size < 1) return Diagnostic::violation("carrier must be nonempty");
  if (algebra.tables.size() != algebra.sig.ops.size())
    return Diagnostic::violation("expected one table per operation symbol");
  for (std::size_t i = 0; i < algebra.tables.size(); ++i) {
    const auto& op = algebra.sig.ops[i];
    std::int64_t want = table_entries(algebra.size, op.arity);
    if (static_cast<std::int64_t>(algebra.tables[i].size()) != want)
      return Diagnostic::violation("table for '" + op.name + "' has " +
                                   std::to_string(algebra.tables[i].size()) + " entries, expected " +
                                   std::to_string(want));
    for (int v : algebra.tables[i])
      if (v < 0 || v >= algebra.size)
        return Diagnostic::violation("table for '" + op.name + "' contains out-of-range value " +
                                     std::to_string(v));
  }
  if (algebra.const_interp.size() != algebra.sig.constants.size())
    return Diagnostic::violation("expected one interpretation per constant symbol");
  for (std::size_t c = 0; c < algebra.const_interp.size(); ++c)
    if (algebra.const_interp[c] < 0 || algebra.const_interp[c] >= algebra.size)
      return Diagnostic::violation("constant '" + algebra.sig.constants[c] +
                                   "' interpreted outside the carrier");
  if (algebra.embedding) {
    CheckResult r = check_a_embedding(*algebra.embedding, algebra);
    if (!r.ok) return Diagnostic::violation("embedding: " + r.witness);
  }
  return Diagnostic::pass();
}

FiniteAlgebra product(const std::vector<FiniteAlgebra>& factors, const Caps& caps) {
  if (factors.empty()) fail("signature-mismatch", "product of an empty family");
  const Signature& sig = factors.front().sig;
  for (const auto& f : factors)
    if (!(f.sig == sig)) fail("signature-mismatch", "product factors must share one signature");

  std::int64_t size = 1;
  for (const auto& f : factors) {
    size *= f.size;
    if (size > caps.product_cap)
      fail("cap-exceeded", "product carrier exceeds cap " + std::to_string(caps.product_cap));
  }
  std::int64_t entries = 0;
  for (const auto& op : sig.ops) {
    std::int64_t t = table_entries(static_cast<int>(size), op.arity);
    entries = (t == INT64_MAX || entries > INT64_MAX - t) ? INT64_MAX : entries + t;
  }
  if (entries > caps.table_cap)
    fail("cap-exceeded", "product tables would need " + std::to_string(entries) +
                             " entries (cap " + std::to_string(caps.table_cap) + ")");

  const int k = static_cast<int>(factors.size());
  // strides for the mixed-radix tuple encoding; first factor most significant
  std::vector<std::int64_t> stride(static_cast<std::size_t>(k), 1);
  for (int i = k - 2; i >= 0; --i) stride[i] = stride[i + 1] * factors[i + 1].size;

  auto decode = [&](std::int64_t index, std::vector<int>& tuple) {
    for (int i = 0; i < k; ++i) {
      tuple[i] = static_cast<int>(index / stride[i]);
      index %= stride[i];
    }
  };

  FiniteAlgebra out;
  out.sig = sig;
  out.size = static_cast<int>(size);
  out.tables.resize(sig.ops.size());
  for (std::size_t opi = 0; opi < sig.ops.size(); ++opi) {
    const int arity = sig.ops[opi].arity;
    std::int64_t rows = table_entries(out.size, arity);
    auto& table = out.tables[opi];
    table.resize(static_cast<std::size_t>(rows));
    std::vector<std::vector<int>> arg_tuples(static_cast<std::size_t>(arity),
                                             std::vector<int>(static_cast<std::size_t>(k)));
    std::vector<int> args(static_cast<std::size_t>(arity), 0);
    std::vector<int> coord_args(static_cast<std::size_t>(arity));
    for (std::int64_t row = 0; row < rows; ++row) {
      std::int64_t r = row;
      for (int a = arity - 1; a >= 0; --a) {
        args[a] = static_cast<int>(r % size);
        r /= size;
      }
      for (int a = 0; a < arity; ++a) decode(args[a], arg_tuples[a]);
      std::int64_t result = 0;
      for (int i = 0; i < k; ++i) {
        for (int a = 0; a < arity; ++a) coord_args[a] = arg_tuples[a][i];
        result += stride[i] * factors[i].apply(static_cast<int>(opi), coord_args);
      }
      table[row] = static_cast<int>(result);
    }
  }
  out.const_interp.resize(sig.constants.size());
  for (std::size_t c = 0; c < sig.constants.size(); ++c) {
    std::int64_t v = 0;
    for (int i = 0; i < k; ++i) v += stride[i] * factors[i].const_interp[c];
    out.const_interp[c] = static_cast<int>(v);
  }

  // Diagonal coefficient structure when every factor is an A-algebra over
  // one and the same A; injectivity is inherited from any single factor.
  bool shared_a = !factors.empty() && factors[0].embedding != nullptr;
  for (int i = 1; shared_a && i < k; ++i) {
    const auto& e0 = *factors[0].embedding;
    shared_a = factors[i].embedding != nullptr &&
               factors[i].embedding->a_constants == e0.a_constants &&
               factors[i].embedding->domain.sig == e0.domain.sig &&
               factors[i].embedding->domain.size == e0.domain.size &&
               factors[i].embedding->domain.tables == e0.domain.tables &&
               factors[i].embedding->domain.const_interp == e0.domain.const_interp;
  }
  if (shared_a) {
    AEmbedding e;
    e.domain = factors[0].embedding->domain;
    e.a_constants = factors[0].embedding->a_constants;
    e.map.resize(factors[0].embedding->map.size());
    for (std::size_t a = 0; a < e.map.size(); ++a) {
      std::int64_t v = 0;
      for (int i = 0; i < k; ++i) v += stride[i] * factors[i].embedding->map[a];
      e.map[a] = static_cast<int>(v);
    }
    out.embedding = std::make_shared<const AEmbedding>(std::move(e));
  }
  return out;
}

QuotientResult quotient(const FiniteAlgebra& algebra, const Congruence& r) {
  if (r.carrier != algebra.size)
    fail("carrier-mismatch", "congruence lives on a carrier of size " + std::to_string(r.carrier) +
                                 ", algebra has " + std::to_string(algebra.size));
  std::string witness;
  if (!congruence_compatible(algebra, r, &witness))
    fail("invalid-congruence", "not a congruence: " + witness);

  auto blocks = r.block_list();
  const int m = static_cast<int>(blocks.size());
  std::vector<int> rep(static_cast<std::size_t>(m));
  for (int b = 0; b < m; ++b) rep[b] = blocks[b].front();

  FiniteAlgebra q;
  q.sig = algebra.sig;
  q.size = m;
  q.tables.resize(algebra.sig.ops.size());
  for (std::size_t opi = 0; opi < algebra.sig.ops.size(); ++opi) {
    const int arity = algebra.sig.ops[opi].arity;
    std::int64_t rows = table_entries(m, arity);
    auto& table = q.tables[opi];
    table.resize(static_cast<std::size_t>(rows));
    std::vector<int> args(static_cast<std::size_t>(arity));
    for (std::int64_t row = 0; row < rows; ++row) {
      std::int64_t x = row;
      for (int a = arity - 1; a >= 0; --a) {
        args[a] = rep[x % m];
        x /= m;
      }
      table[row] = r.block_of[algebra.apply(static_cast<int>(opi), args)];
    }
  }
  q.const_interp.resize(algebra.sig.constants.size());
  for (std::size_t c = 0; c < algebra.const_interp.size(); ++c)
    q.const_interp[c] = r.block_of[algebra.const_interp[c]];
  if (algebra.embedding) {
    AEmbedding e = *algebra.embedding;
    for (auto& v : e.map) v = r.block_of[v];
    // The A-structure survives only when R merges no two A-images; otherwise
    // the quotient is a plain algebra of the base language.
    std::vector<int> images = e.map;
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) == images.end())
      q.embedding = std::make_shared<const AEmbedding>(std::move(e));
  }

  Homomorphism proj;
  proj.domain = algebra;
  proj.codomain = q;
  proj.map = r.block_of;
  return {std::move(q), std::move(proj)};
}

std::vector<int> subalgebra_generated(const FiniteAlgebra& algebra, const std::vector<int>& gens,
                                      bool include_constants) {
  std::vector<bool> in(static_cast<std::size_t>(algebra.size), false);
  std::vector<int> members;
  auto add = [&](int e) {
    if (!in[e]) {
      in[e] = true;
      members.push_back(e);
    }
  };
  for (int g : gens) {
    if (g < 0 || g >= algebra.size)
      fail("carrier-mismatch", "generator " + std::to_string(g) + " outside the carrier");
    add(g);
  }
  if (include_constants)
    for (int v : algebra.const_interp) add(v);

  // fixpoint: apply every operation to every tuple of current members
  std::size_t scanned = 0;
  while (scanned < members.size()) {
    scanned = members.size();
    for (std::size_t opi = 0; opi < algebra.sig.ops.size(); ++opi) {
      const int arity = algebra.sig.ops[opi].arity;
      std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
      std::vector<int> args(static_cast<std::size_t>(arity));
      if (members.empty()) break;
      while (true) {
        for (int a = 0; a < arity; ++a) args[a] = members[idx[a]];
        add(algebra.apply(static_cast<int>(opi), args));
        int k = arity - 1;
        while (k >= 0 && ++idx[k] == scanned) idx[k--] = 0;
        if (k < 0) break;
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

CheckResult check_a_embedding(const AEmbedding& e, const FiniteAlgebra& codomain) {
  const FiniteAlgebra& a = e.domain;
  if (!(a.sig == codomain.sig))
    return CheckResult::violation("domain and codomain signatures differ");
  if (static_cast<int>(e.map.size()) != a.size)
    return CheckResult::violation("map must list one image per element of A");
  for (int v : e.map)
    if (v < 0 || v >= codomain.size)
      return CheckResult::violation("image " + std::to_string(v) + " outside the codomain carrier");
  for (int x = 0; x < a.size; ++x)
    for (int y = x + 1; y < a.size; ++y)
      if (e.map[x] == e.map[y])
        return CheckResult::violation("not injective: " + std::to_string(x) + " and " +
                                      std::to_string(y) + " share image " +
                                      std::to_string(e.map[x]));
  for (std::size_t opi = 0; opi < a.sig.ops.size(); ++opi) {
    const int arity = a.sig.ops[opi].arity;
    std::vector<int> args(static_cast<std::size_t>(arity), 0);
    std::vector<int> mapped(static_cast<std::size_t>(arity));
    while (true) {
      for (int k = 0; k < arity; ++k) mapped[k] = e.map[args[k]];
      int lhs = e.map[a.apply(static_cast<int>(opi), args)];
      int rhs = codomain.apply(static_cast<int>(opi), mapped);
      if (lhs != rhs)
        return CheckResult::violation("(" + a.sig.ops[opi].name + "," + tuple_str(args) +
                                      "): image " + std::to_string(rhs) + " != map(" +
                                      std::to_string(a.apply(static_cast<int>(opi), args)) + ")=" +
                                      std::to_string(lhs));
      int k = arity - 1;
      while (k >= 0 && ++args[k] == a.size) args[k--] = 0;
      if (k < 0) break;
    }
  }
  for (std::size_t c = 0; c < a.sig.constants.size(); ++c)
    if (e.map[a.const_interp[c]] != codomain.const_interp[c])
      return CheckResult::violation("constant '" + a.sig.constants[c] + "' not preserved");
  if (!e.a_constants.empty()) {
    if (static_cast<int>(e.a_constants.size()) != a.size)
      return CheckResult::violation("a_constants must name every element of A");
    for (int k = 0; k < a.size; ++k) {
      int c = e.a_constants[k];
      if (c < 0 || c >= static_cast<int>(codomain.sig.constants.size()))
        return CheckResult::violation("a_constants refers to a missing constant symbol");
      if (codomain.const_interp[c] != e.map[k])
        return CheckResult::violation("constant '" + codomain.sig.constants[c] +
                                      "' names element " + std::to_string(k) +
                                      " of A but is interpreted as " +
                                      std::to_string(codomain.const_interp[c]) + ", not map(" +
                                      std::to_string(k) + ")=" + std::to_string(e.map[k]));
      if (a.const_interp[c] != k)
        return CheckResult::violation("constant '" + a.sig.constants[c] +
                                      "' must be interpreted in A as the element it names");
    }
  }
  return CheckResult::pass();
}

std::vector<int> find_trivial_subalgebras(const FiniteAlgebra& algebra) {
  std::vector<int> out;
  for (int e = 0; e < algebra.size; ++e) {
    bool trivial = true;
    for (std::size_t opi = 0; opi < algebra.sig.ops.size() && trivial; ++opi) {
      std::vector<int> args(static_cast<std::size_t>(algebra.sig.ops[opi].arity), e);
      if (algebra.apply(static_cast<int>(opi), args) != e) trivial = false;
    }
    if (trivial) out.push_back(e);
  }
  return out;
}

CheckResult check_homomorphism(const Homomorphism& h) {
  if (!(h.domain.sig == h.codomain.sig))
    return CheckResult::violation("domain and codomain signatures differ");
  if (static_cast<int>(h.map.size()) != h.domain.size)
    return CheckResult::violation("map must list one image per domain element");
  for (int v : h.map)
    if (v < 0 || v >= h.codomain.size)
      return CheckResult::violation("image " + std::to_string(v) + " outside the codomain carrier");
  for (std::size_t opi = 0; opi < h.domain.sig.ops.size(); ++opi) {
    const int arity = h.domain.sig.ops[opi].arity;
    std::vector<int> args(static_cast<std::size_t>(arity), 0);
    std::vector<int> mapped(static_cast<std::size_t>(arity));
    while (true) {
      for (int k = 0; k < arity; ++k) mapped[k] = h.map[args[k]];
      if (h.map[h.domain.apply(static_cast<int>(opi), args)] !=
          h.codomain.apply(static_cast<int>(opi), mapped))
        return CheckResult::violation("not preserved at (" + h.domain.sig.ops[opi].name + "," +
                                      tuple_str(args) + ")");
      int k = arity - 1;
      while (k >= 0 && ++args[k] == h.domain.size) args[k--] = 0;
      if (k < 0) break;
    }
  }
  for (std::size_t c = 0; c < h.domain.sig.constants.size(); ++c)
    if (h.map[h.domain.const_interp[c]] != h.codomain.const_interp[c])
      return CheckResult::violation("constant '" + h.domain.sig.constants[c] + "' not preserved");
  return CheckResult::pass();
}

}  // namespace uag
