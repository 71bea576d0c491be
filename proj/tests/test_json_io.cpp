#include "doctest.h"

#include <string>

#include "builders.hpp"
#include "testutil.hpp"
#include "uag/error.hpp"
#include "uag/json_io.hpp"

using namespace uag;
using namespace uag::testing;

namespace {

const char* kZ4 = R"({
  "signature": {"ops": [{"name": "add", "arity": 2}, {"name": "neg", "arity": 1}], "constants": ["zero"]},
  "size": 4,
  "tables": {"add": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]], "neg": [0,3,2,1]},
  "consts": {"zero": 0}
})";

const char* kA2 = R"({
  "signature": {"ops": [{"name": "add", "arity": 2}, {"name": "neg", "arity": 1}], "constants": ["zero", "a0", "a1"]},
  "size": 2,
  "tables": {"add": [[0,1],[1,0]], "neg": [0,1]},
  "consts": {"zero": 0, "a0": 0, "a1": 1}
})";

const char* kB4 = R"({
  "signature": {"ops": [{"name": "add", "arity": 2}, {"name": "neg", "arity": 1}], "constants": ["zero", "a0", "a1"]},
  "size": 4,
  "tables": {"add": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]], "neg": [0,3,2,1]},
  "consts": {"zero": 0, "a0": 0, "a1": 2},
  "embedding": {"of": "a2.json", "map": [0, 2]}
})";

}  // namespace

TEST_CASE("signature round-trip") {
  Signature sig = zmod(4).sig;
  CHECK(signature_from_json(signature_to_json(sig)) == sig);
  CHECK(error_code([&] { signature_from_json(Json::parse(R"({"ops": []})")); }) ==
        "malformed-json");
  CHECK(error_code([&] {
          signature_from_json(
              Json::parse(R"({"ops": [{"name": "f", "arity": 0}], "constants": []})"));
        }) == "invalid-signature");
}

TEST_CASE("algebra files load with nested row-major tables") {
  ScratchDir dir("algebra-load");
  std::string path = dir.file("z4.json", kZ4);
  FiniteAlgebra z4 = load_algebra(path);
  CHECK(z4.size == 4);
  CHECK(z4.tables == zmod(4).tables);
  CHECK(z4.const_interp == zmod(4).const_interp);
  CHECK(z4.embedding == nullptr);
}

TEST_CASE("algebra round-trip through JSON") {
  FiniteAlgebra z4 = zmod(4);
  FiniteAlgebra back = algebra_from_json(algebra_to_json(z4), ".");
  CHECK(back.size == z4.size);
  CHECK(back.sig == z4.sig);
  CHECK(back.tables == z4.tables);
  CHECK(back.const_interp == z4.const_interp);
}

TEST_CASE("embedding files resolve relative to their directory") {
  ScratchDir dir("embedding-load");
  dir.file("a2.json", kA2);
  std::string path = dir.file("b4.json", kB4);
  FiniteAlgebra b4 = load_algebra(path);
  REQUIRE(b4.embedding != nullptr);
  CHECK(b4.embedding->map == std::vector<int>{0, 2});
  CHECK(b4.embedding->domain.size == 2);
  // default element names: the last |A| constants
  CHECK(b4.embedding->a_constants == std::vector<int>{1, 2});
  CHECK(check_a_embedding(*b4.embedding, b4).ok);
}

TEST_CASE("embedding validation failures are reported") {
  ScratchDir dir("embedding-bad");
  dir.file("a2.json", kA2);
  std::string bad_map = kB4;
  bad_map.replace(bad_map.find("[0, 2]"), 6, "[0, 3]");
  std::string path = dir.file("bad.json", bad_map);
  CHECK(error_code([&] { load_algebra(path); }) == "invalid-embedding");

  std::string squash = kB4;
  squash.replace(squash.find("[0, 2]"), 6, "[0, 0]");
  std::string path2 = dir.file("squash.json", squash);
  CHECK(error_code([&] { load_algebra(path2); }) == "invalid-embedding");
}

TEST_CASE("self-referential embedding chains are cut off") {
  ScratchDir dir("embedding-loop");
  std::string loop = R"({
    "signature": {"ops": [], "constants": ["c"]},
    "size": 1,
    "tables": {},
    "consts": {"c": 0},
    "embedding": {"of": "loop.json", "map": [0]}
  })";
  std::string path = dir.file("loop.json", loop);
  CHECK(error_code([&] { load_algebra(path); }) == "invalid-embedding");
}

TEST_CASE("malformed and missing files carry distinct codes") {
  ScratchDir dir("io-errors");
  CHECK(error_code([&] { load_algebra(dir.path.string() + "/nope.json"); }) == "missing-file");
  std::string path = dir.file("broken.json", "{not json");
  CHECK(error_code([&] { load_algebra(path); }) == "malformed-json");
  std::string arr = dir.file("arr.json", "[1,2,3]");
  CHECK(error_code([&] { load_algebra(arr); }) == "malformed-json");
}

TEST_CASE("algebra JSON validation: strict keys, sizes, ranges") {
  Json j = parse_json_text(kZ4, "test");
  Json missing = j;
  missing.erase("tables");
  CHECK(error_code([&] { algebra_from_json(missing, "."); }) == "malformed-json");

  Json extra = j;
  extra["tables"]["mystery"] = Json::array();
  CHECK(error_code([&] { algebra_from_json(extra, "."); }) == "malformed-json");

  Json out_of_range = j;
  out_of_range["tables"]["neg"] = Json::parse("[0,3,2,9]");
  CHECK(error_code([&] { algebra_from_json(out_of_range, "."); }) == "invalid-algebra");

  Json bad_shape = j;
  bad_shape["tables"]["add"] = Json::parse("[[0,1,2,3],[1,2,3,0],[2,3,0,1]]");
  CHECK(error_code([&] { algebra_from_json(bad_shape, "."); }) == "malformed-json");

  Json zero_size = j;
  zero_size["size"] = 0;
  CHECK(error_code([&] { algebra_from_json(zero_size, "."); }) == "invalid-algebra");

  Json missing_const = j;
  missing_const["consts"] = Json::object();
  CHECK(error_code([&] { algebra_from_json(missing_const, "."); }) == "malformed-json");
}

TEST_CASE("congruence files: blocks must partition the carrier exactly") {
  Congruence r = congruence_from_json(Json::parse(R"({"blocks": [[0,2],[1,3]]})"), 4);
  CHECK(r == Congruence::from_classes({0, 1, 0, 1}));
  CHECK(congruence_to_json(r) == Json::parse(R"({"blocks": [[0,2],[1,3]]})"));

  CHECK(error_code([&] { congruence_from_json(Json::parse(R"({"blocks": [[0,2]]})"), 4); }) ==
        "invalid-congruence");
  CHECK(error_code([&] {
          congruence_from_json(Json::parse(R"({"blocks": [[0,2],[1,3],[1]]})"), 4);
        }) == "invalid-congruence");
  CHECK(error_code([&] {
          congruence_from_json(Json::parse(R"({"blocks": [[0,2],[1,5]]})"), 4);
        }) == "invalid-congruence");
}

TEST_CASE("system files parse terms against the supplied signature") {
  Signature sig = zmod(4).sig;
  Json j = Json::parse(
      R"js({"vars": ["x", "y"], "equations": [{"lhs": "add(x,y)", "rhs": "zero"}]})js");
  EqSystem s = system_from_json(j, sig);
  CHECK(s.vars == std::vector<std::string>{"x", "y"});
  REQUIRE(s.equations.size() == 1);
  CHECK(print_term(s.equations[0].lhs, sig, s.vars) == "add(x,y)");
  CHECK(system_to_json(s) == j);

  Json dup = Json::parse(R"({"vars": ["x", "x"], "equations": []})");
  CHECK(error_code([&] { system_from_json(dup, sig); }) == "duplicate-symbol");
  Json clash = Json::parse(R"({"vars": ["zero"], "equations": []})");
  CHECK(error_code([&] { system_from_json(clash, sig); }) == "duplicate-symbol");
  Json bad_term =
      Json::parse(R"js({"vars": ["x"], "equations": [{"lhs": "mul(x,x)", "rhs": "x"}]})js");
  CHECK(error_code([&] { system_from_json(bad_term, sig); }) == "unknown-symbol");
}

TEST_CASE("point-set files canonicalize and validate") {
  AlgebraicSet y = set_from_json(Json::parse(R"({"n": 1, "points": [[2],[0],[2]]})"), 4);
  CHECK(y.n == 1);
  CHECK(y.points == std::vector<Assignment>{{0}, {2}});
  CHECK(set_to_json(y) == Json::parse(R"({"n": 1, "points": [[0],[2]]})"));

  CHECK(error_code([&] { set_from_json(Json::parse(R"({"n": 1, "points": [[4]]})"), 4); }) ==
        "malformed-json");
  CHECK(error_code([&] { set_from_json(Json::parse(R"({"n": 2, "points": [[0]]})"), 4); }) ==
        "malformed-json");
}

TEST_CASE("save and load round-trip on disk") {
  ScratchDir dir("roundtrip");
  FiniteAlgebra z4 = zmod(4);
  std::string apath = (dir.path / "alg.json").string();
  save_algebra(z4, apath);
  CHECK(load_algebra(apath).tables == z4.tables);

  EqSystem s;
  s.sig = z4.sig;
  s.vars = {"x"};
  s.equations.push_back(
      {parse_term("add(x,x)", z4.sig, s.vars), parse_term("zero", z4.sig, s.vars)});
  std::string spath = (dir.path / "sys.json").string();
  save_system(s, spath);
  EqSystem s2 = load_system(spath, z4.sig);
  CHECK(system_to_json(s2) == system_to_json(s));

  AlgebraicSet y;
  y.carrier_size = 4;
  y.n = 1;
  y.points = {{0}, {2}};
  std::string ypath = (dir.path / "set.json").string();
  save_set(y, ypath);
  CHECK(load_set(ypath, 4).points == y.points);

  Congruence r = Congruence::from_classes({0, 1, 0, 1});
  std::string rpath = (dir.path / "cong.json").string();
  save_json(congruence_to_json(r), rpath);
  CHECK(load_congruence(rpath, 4) == r);
}

TEST_CASE("A-structured algebras round-trip when the coefficient path is supplied") {
  ScratchDir dir("a-roundtrip");
  dir.file("a2.json", kA2);
  std::string path = dir.file("b4.json", kB4);
  FiniteAlgebra b4 = load_algebra(path);
  Json j = algebra_to_json(b4, "a2.json");
  REQUIRE(j.contains("embedding"));
  CHECK(j["embedding"]["of"] == "a2.json");
  CHECK(j["embedding"]["map"] == Json::parse("[0,2]"));
  std::string path2 = dir.file("b4-copy.json", j.dump(2) + "\n");
  FiniteAlgebra again = load_algebra(path2);
  REQUIRE(again.embedding != nullptr);
  CHECK(again.embedding->map == b4.embedding->map);

  // without a path the embedding is omitted
  CHECK_FALSE(algebra_to_json(b4).contains("embedding"));
}
