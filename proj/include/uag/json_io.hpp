#pragma once

#include <string>

#include "json.hpp"
#include "uag/algebra.hpp"
#include "uag/congruence.hpp"
#include "uag/equation.hpp"
#include "uag/geometry.hpp"

namespace uag {

using Json = nlohmann::json;

// Whole-file read; Error("missing-file") when the path cannot be opened.
std::string read_text_file(const std::string& path);

// Error("malformed-json") carrying the origin (a path or label) on failure.
Json parse_json_text(const std::string& text, const std::string& origin);

Signature signature_from_json(const Json& j);
Json signature_to_json(const Signature& sig);

// Algebra files embed their signature; the optional "embedding" object's
// "of" path is resolved relative to base_dir (the containing directory).
FiniteAlgebra algebra_from_json(const Json& j, const std::string& base_dir);
FiniteAlgebra load_algebra(const std::string& path);

// embedding_of: the path to record for the coefficient algebra; when empty
// and the algebra has an embedding, the embedding is omitted from the JSON.
Json algebra_to_json(const FiniteAlgebra& a, const std::string& embedding_of = "");
void save_algebra(const FiniteAlgebra& a, const std::string& path,
                  const std::string& embedding_of = "");

Congruence congruence_from_json(const Json& j, int carrier);
Congruence load_congruence(const std::string& path, int carrier);
Json congruence_to_json(const Congruence& r);

// Systems are parsed against the signature they will be used with; term
// strings use the canonical grammar.
EqSystem system_from_json(const Json& j, const Signature& sig);
EqSystem load_system(const std::string& path, const Signature& sig);
Json system_to_json(const EqSystem& s);
void save_system(const EqSystem& s, const std::string& path);

AlgebraicSet set_from_json(const Json& j, int carrier_size);
AlgebraicSet load_set(const std::string& path, int carrier_size);
Json set_to_json(const AlgebraicSet& y);
void save_set(const AlgebraicSet& y, const std::string& path);

void save_json(const Json& j, const std::string& path);

}  // namespace uag
