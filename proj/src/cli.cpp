#include "uag/cli.hpp"

#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "uag/error.hpp"
#include "uag/freealg.hpp"
#include "uag/json_io.hpp"

namespace uag {

namespace {

struct CliState {
  std::string algebra_path;
  std::vector<std::string> system_paths;
  std::string set_path;
  std::string congruence_path;
  std::vector<std::string> chain_paths;
  std::vector<std::string> family_paths;
  std::string queries_path;
  int vars = 0;
  std::string out_format = "json";
  std::int64_t cap = Caps{}.scan_cap;
  int jobs = 1;
  std::int64_t seed = 0;
  int depth = Caps{}.depth_cap;

  Caps caps() const {
    Caps c;
    c.scan_cap = cap;
    return c;
  }

  std::string one_system() const {
    if (system_paths.size() != 1) fail("context-mismatch", "exactly one --system expected");
    return system_paths.front();
  }
};

// ---- table rendering ------------------------------------------------------

std::string align_rows(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c >= width.size()) width.push_back(0);
      width[c] = std::max(width[c], row[c].size());
    }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      line += row[c];
      if (c + 1 < row.size()) line += std::string(width[c] - row[c].size(), ' ');
    }
    out += line + "\n";
  }
  return out;
}

std::string scalar_str(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string join_ints(const Json& arr, const char* sep = " ") {
  std::string s;
  for (const Json& v : arr) {
    if (!s.empty()) s += sep;
    s += v.dump();
  }
  return s;
}

std::string blocks_str(const Json& blocks) {
  std::string s;
  for (const Json& b : blocks) s += "{" + join_ints(b, ",") + "}";
  return s;
}

std::string points_table(const Json& j) {
  std::vector<std::vector<std::string>> rows{{"point"}};
  for (const Json& p : j.at("points")) rows.push_back({join_ints(p)});
  return "n " + j.at("n").dump() + "\n" + align_rows(rows);
}

std::string members_table(const Json& j) {
  std::vector<std::vector<std::string>> rows{{"index", "member"}};
  int i = 0;
  for (const Json& m : j.at("members")) rows.push_back({std::to_string(i++), m.dump()});
  return align_rows(rows);
}

std::string key_value_table(const Json& j) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& item : j.items()) rows.push_back({item.key(), scalar_str(item.value())});
  return align_rows(rows);
}

std::string render_table(const std::string& cmd, const Json& j) {
  if (cmd == "solve" || cmd == "closure") return points_table(j);
  if (cmd == "radical-member" || cmd == "ideal-member") return members_table(j);
  if (cmd == "coord") {
    std::vector<std::vector<std::string>> rows{{"id", "tuple", "witness"}};
    int i = 0;
    for (const Json& e : j.at("elements"))
      rows.push_back({std::to_string(i++), join_ints(e.at("tuple")),
                      e.at("witness").get<std::string>()});
    return "size " + j.at("size").dump() + "\n" + align_rows(rows);
  }
  if (cmd == "congruence" || cmd == "validate" || cmd == "certify") return key_value_table(j);
  if (cmd == "lattice") {
    std::vector<std::vector<std::string>> rows{{"index", "blocks"}};
    int i = 0;
    for (const Json& r : j.at("congruences"))
      rows.push_back({std::to_string(i++), blocks_str(r.at("blocks"))});
    return "count " + j.at("count").dump() + "\n" + align_rows(rows);
  }
  if (cmd == "free") {
    std::vector<std::vector<std::string>> rows{{"id", "witness"}};
    int i = 0;
    for (const Json& w : j.at("witnesses"))
      rows.push_back({std::to_string(i++), w.get<std::string>()});
    return "size " + j.at("size").dump() + "\ngenerators " + join_ints(j.at("generators")) +
           "\n" + align_rows(rows);
  }
  if (cmd == "chain") {
    std::vector<std::vector<std::string>> rows{{"step", "V_size", "proper"}};
    const Json& sizes = j.at("sizes");
    const Json& proper = j.at("proper");
    for (std::size_t i = 0; i < sizes.size(); ++i)
      rows.push_back({std::to_string(i), sizes[i].dump(),
                      i == 0 ? "-" : proper[i - 1].dump()});
    return align_rows(rows);
  }
  if (cmd == "theorem-forward") {
    std::vector<std::vector<std::string>> rows{{"member", "V_S", "V_S0", "passed"}};
    int i = 0;
    for (const Json& c : j.at("checks"))
      rows.push_back({std::to_string(i++), c.at("V_S").dump(), c.at("V_S0").dump(),
                      c.at("passed").dump()});
    return "consistent " + j.at("consistent").dump() + "\nok " + j.at("ok").dump() + "\n" +
           align_rows(rows);
  }
  if (cmd == "theorem-converse") {
    std::vector<std::vector<std::string>> rows{{"step", "V_size", "proper", "witness_confirmed"}};
    for (const Json& s : j.at("steps"))
      rows.push_back({s.at("step").dump(), s.at("V_size").dump(), s.at("proper").dump(),
                      scalar_str(s.at("witness_confirmed"))});
    return align_rows(rows) + "final_V_size " + j.at("final_V_size").dump() + "\nB_size " +
           j.at("B_size").dump() + "\nok " + j.at("ok").dump() + "\n";
  }
  return j.dump(2) + "\n";
}

// ---- shared loaders -------------------------------------------------------

std::vector<FiniteAlgebra> load_family(const std::vector<std::string>& paths) {
  if (paths.empty()) fail("context-mismatch", "at least one --family file is required");
  std::vector<FiniteAlgebra> family;
  family.reserve(paths.size());
  for (const std::string& p : paths) family.push_back(load_algebra(p));
  return family;
}

std::vector<std::string> numbered_vars(int n) {
  std::vector<std::string> v;
  for (int j = 1; j <= n; ++j) v.push_back("x" + std::to_string(j));
  return v;
}

Json witness_json(WitnessStatus w) {
  switch (w) {
    case WitnessStatus::confirmed: return true;
    case WitnessStatus::failed: return false;
    default: return "skipped";
  }
}

// ---- subcommand bodies ----------------------------------------------------

Json cmd_solve(const CliState& st) {
  FiniteAlgebra b = load_algebra(st.algebra_path);
  EqSystem s = load_system(st.one_system(), b.sig);
  return set_to_json(solve(b, s, st.caps(), st.jobs));
}

Json cmd_radical_member(const CliState& st) {
  FiniteAlgebra b = load_algebra(st.algebra_path);
  EqSystem queries = load_system(st.queries_path, b.sig);
  AlgebraicSet y = load_set(st.set_path, b.size);
  if (static_cast<int>(queries.vars.size()) != y.n)
    fail("context-mismatch", "query variables do not match the set's arity");
  Json members = Json::array();
  for (const Equation& e : queries.equations) members.push_back(radical_member(b, y, e));
  return {{"members", members}};
}

Json cmd_coord(const CliState& st) {
  FiniteAlgebra b = load_algebra(st.algebra_path);
  AlgebraicSet y = load_set(st.set_path, b.size);
  CoordinateAlgebra ca = coordinate_algebra(b, y, st.caps());
  std::vector<std::string> vars = numbered_vars(y.n);
  Json elements = Json::array();
  for (std::size_t i = 0; i < ca.tuples.size(); ++i)
    elements.push_back({{"tuple", ca.tuples[i]},
                        {"witness", print_term(ca.witnesses[i], b.sig, vars)}});
  return {{"size", ca.algebra.size},
          {"elements", elements},
          {"y_points", ca.y_points},
          {"algebra", algebra_to_json(ca.algebra)}};
}

Json cmd_closure(const CliState& st) {
  FiniteAlgebra b = load_algebra(st.algebra_path);
  AlgebraicSet y = load_set(st.set_path, b.size);
  return set_to_json(zariski_closure(b, y, st.caps()));
}

Json cmd_congruence(const CliState& st) {
  FiniteAlgebra b = load_algebra(st.algebra_path);
  Congruence r = load_congruence(st.congruence_path, b.size);
  std::string witness;
  bool compatible = congruence_compatible(b, r, &witness);
  Json j = {{"compatible", compatible}, {"blocks", r.block_count()}};
  if (!compatible) j["witness"] = witness;
  if (b.embedding) {
    ACongruenceResult ar = is_a_congruence(r, *b.embedding);
    j["a_congruence"] = ar.ok;
    if (!ar.ok) j["merged"] = {ar.witness.first, ar.witness.second};
  }
  return j;
}

Json cmd_lattice(const CliState& st) {
  FiniteAlgebra b = load_algebra(st.algebra_path);
  std::vector<Congruence> lattice = congruence_lattice(b, st.caps());
  Json list = Json::array();
  for (const Congruence& r : lattice) list.push_back(congruence_to_json(r));
  return {{"count", static_cast<int>(lattice.size())}, {"congruences", list}};
}

Json cmd_ideal_member(const CliState& st) {
  FiniteAlgebra b = load_algebra(st.algebra_path);
  EqSystem s = load_system(st.one_system(), b.sig);
  EqSystem queries = load_system(st.queries_path, b.sig);
  if (queries.vars != s.vars)
    fail("context-mismatch", "queries must use the system's variables");
  IdealDecider dec(s);
  Json members = Json::array();
  for (const Equation& e : queries.equations) members.push_back(dec.member(e));
  return {{"members", members}};
}

Json cmd_free(const CliState& st) {
  std::vector<FiniteAlgebra> family = load_family(st.family_paths);
  bool with_a = true;
  for (const FiniteAlgebra& b : family)
    if (!b.embedding) with_a = false;
  FreeAlgebra f = free_algebra(family, st.vars, with_a, st.caps());
  std::vector<std::string> vars = numbered_vars(st.vars);
  Json witnesses = Json::array();
  for (const Term& w : f.witnesses) witnesses.push_back(print_term(w, f.base.sig, vars));
  return {{"size", f.base.size},
          {"generators", f.generators},
          {"witnesses", witnesses},
          {"algebra", algebra_to_json(f.base)}};
}

Json cmd_certify(const CliState& st) {
  FiniteAlgebra b = load_algebra(st.algebra_path);
  EqSystem s = load_system(st.one_system(), b.sig);
  Certificate cert = noetherian_certificate(b, s, st.caps());
  return {{"kept", cert.kept},
          {"solution_size", static_cast<std::int64_t>(cert.solution.points.size())}};
}

Json cmd_chain(const CliState& st) {
  FiniteAlgebra b = load_algebra(st.algebra_path);
  if (st.system_paths.empty()) fail("context-mismatch", "at least one --system is required");
  std::vector<EqSystem> systems;
  for (const std::string& p : st.system_paths) systems.push_back(load_system(p, b.sig));
  DescendingChain chain = descending_chain(b, systems, st.caps());
  Json sizes = Json::array();
  for (const AlgebraicSet& s : chain.sets)
    sizes.push_back(static_cast<std::int64_t>(s.points.size()));
  return {{"sizes", sizes}, {"proper", chain.proper}};
}

Json cmd_theorem_forward(const CliState& st) {
  std::vector<FiniteAlgebra> family = load_family(st.family_paths);
  EqSystem s = load_system(st.one_system(), family.front().sig);
  ForwardReport rep = theorem_forward(family, static_cast<int>(s.vars.size()), s, st.caps());
  Json checks = Json::array();
  for (std::size_t i = 0; i < rep.checks.size(); ++i)
    checks.push_back({{"member", static_cast<int>(i)},
                      {"V_S", rep.checks[i].v_s},
                      {"V_S0", rep.checks[i].v_s0},
                      {"passed", rep.checks[i].passed}});
  Json j = {{"consistent", rep.consistent},
            {"s0", system_to_json(rep.s0)},
            {"checks", checks},
            {"ok", rep.ok}};
  if (!rep.consistent) j["merged"] = {rep.merged_a.first, rep.merged_a.second};
  return j;
}

Json cmd_theorem_converse(const CliState& st) {
  std::vector<FiniteAlgebra> family = load_family(st.family_paths);
  FreeAlgebra f = free_algebra(family, st.vars, /*with_a=*/true, st.caps());
  if (st.chain_paths.empty()) fail("context-mismatch", "at least one --chain file is required");
  std::vector<Congruence> chain;
  for (const std::string& p : st.chain_paths) chain.push_back(load_congruence(p, f.base.size));
  ConverseReport rep = theorem_converse(f, chain, st.caps());
  Json steps = Json::array();
  for (const ConverseStep& s : rep.steps)
    steps.push_back({{"step", s.step},
                     {"V_size", s.v_size},
                     {"proper", s.proper},
                     {"witness_confirmed", witness_json(s.witness)}});
  return {{"steps", steps},
          {"final_V_size", rep.final_v_size},
          {"B_size", rep.b_size},
          {"ok", rep.all_proper}};
}

Json cmd_validate(const CliState& st) {
  FiniteAlgebra b = load_algebra(st.algebra_path);
  Json j = {{"algebra", "ok"}, {"size", b.size}};
  bool ok = true;
  if (!st.system_paths.empty()) {
    load_system(st.one_system(), b.sig);
    j["system"] = "ok";
  }
  if (!st.congruence_path.empty()) {
    Congruence r = load_congruence(st.congruence_path, b.size);
    std::string witness;
    if (congruence_compatible(b, r, &witness)) {
      j["congruence"] = "ok";
    } else {
      j["congruence"] = witness;
      ok = false;
    }
  }
  if (!st.set_path.empty()) {
    load_set(st.set_path, b.size);
    j["set"] = "ok";
  }
  j["ok"] = ok;
  return j;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"universal algebraic geometry over finite algebras"};
  app.require_subcommand(1);

  CliState st;
  std::map<std::string, std::function<Json(const CliState&)>> handlers{
      {"solve", cmd_solve},
      {"radical-member", cmd_radical_member},
      {"coord", cmd_coord},
      {"closure", cmd_closure},
      {"congruence", cmd_congruence},
      {"lattice", cmd_lattice},
      {"ideal-member", cmd_ideal_member},
      {"free", cmd_free},
      {"certify", cmd_certify},
      {"chain", cmd_chain},
      {"theorem-forward", cmd_theorem_forward},
      {"theorem-converse", cmd_theorem_converse},
      {"validate", cmd_validate},
  };

  struct Spec {
    const char* name;
    const char* desc;
    bool algebra, system, set, congruence, chain, family, queries, vars;
  };
  // Which flags each subcommand takes (beyond the shared output/cap flags).
  const Spec specs[] = {
      {"solve", "brute-force solution set V_B(S)", true, true, false, false, false, false, false,
       false},
      {"radical-member", "test equations against Rad_B(Y)", true, false, true, false, false,
       false, true, false},
      {"coord", "coordinate algebra of a nonempty algebraic set", true, false, true, false, false,
       false, false, false},
      {"closure", "Zariski closure of a point set", true, false, true, false, false, false, false,
       false},
      {"congruence", "check a partition for congruence properties", true, false, false, true,
       false, false, false, false},
      {"lattice", "enumerate the congruence lattice", true, false, false, false, false, false,
       false, false},
      {"ideal-member", "decide membership in the generated ideal [S]", true, true, false, false,
       false, false, true, false},
      {"free", "free algebra of the pre-variety generated by a family", false, false, false,
       false, false, true, false, true},
      {"certify", "finite-subsystem certificate", true, true, false, false, false, false, false,
       false},
      {"chain", "descending chain of solution sets", true, true, false, false, false, false,
       false, false},
      {"theorem-forward", "forward half of the noetherian equivalence", false, true, false, false,
       false, true, false, false},
      {"theorem-converse", "converse half of the noetherian equivalence", false, false, false,
       false, true, true, false, true},
      {"validate", "load and validate input files", true, true, true, true, false, false, false,
       false},
  };

  for (const Spec& spec : specs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.desc);
    const bool optional_inputs = std::string(spec.name) == "validate";
    if (spec.algebra)
      sub->add_option("--algebra", st.algebra_path, "algebra file")->required();
    if (spec.system) {
      auto* opt = sub->add_option("--system", st.system_paths, "system file (repeatable)");
      if (!optional_inputs) opt->required();
    }
    if (spec.set) {
      auto* opt = sub->add_option("--set", st.set_path, "point-set file");
      if (!optional_inputs) opt->required();
    }
    if (spec.congruence) {
      auto* opt = sub->add_option("--congruence", st.congruence_path, "congruence file");
      if (!optional_inputs) opt->required();
    }
    if (spec.chain)
      sub->add_option("--chain", st.chain_paths, "congruence file (repeatable)")->required();
    if (spec.family)
      sub->add_option("--family", st.family_paths, "family algebra file (repeatable)")
          ->required();
    if (spec.queries)
      sub->add_option("--queries", st.queries_path, "query system file")->required();
    if (spec.vars)
      sub->add_option("--vars", st.vars, "number of variables / generators")
          ->required()
          ->check(CLI::NonNegativeNumber);
    sub->add_option("--out", st.out_format, "output format")
        ->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--cap", st.cap, "point-scan cap")->check(CLI::PositiveNumber);
    sub->add_option("--jobs", st.jobs, "worker threads for point scans")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", st.seed, "seed for randomized suites (reserved)");
    sub->add_option("--depth", st.depth, "term depth bound (reserved)")
        ->check(CLI::PositiveNumber);
  }

  try {
    std::vector<const char*> argv;
    argv.push_back("uag");
    for (const std::string& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    Json result = handlers.at(sub->get_name())(st);
    if (st.out_format == "table")
      out << render_table(sub->get_name(), result);
    else
      out << result.dump(2) << "\n";
    return 0;
  } catch (const Error& e) {
    Json error = {{"error", {{"code", e.code()}, {"message", e.what()}}}};
    out << error.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    Json error = {{"error", {{"code", "internal-error"}, {"message", e.what()}}}};
    out << error.dump(2) << "\n";
    return 1;
  }
}

}  // namespace uag
