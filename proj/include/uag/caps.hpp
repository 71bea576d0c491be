#pragma once

#include <cstdint>

namespace uag {

// Resource guards for the exhaustive computations. Everything here is a
// desk-scale honesty limit: exceeding a cap raises Error("cap-exceeded", ...)
// with the offending count, never a silent truncation.
struct Caps {
  std::int64_t scan_cap = 10'000'000;     // points visited in a B^n scan
  std::int64_t product_cap = 1'000'000;   // carrier size of a product algebra
  std::int64_t table_cap = 100'000'000;   // total operation-table entries materialized
  std::int64_t term_cap = 5'000'000;      // terms produced by enumeration
  std::int64_t closure_cap = 1'000'000;   // elements in a function/subalgebra closure
  int lattice_cap = 8;                    // carrier bound for congruence-lattice enumeration
  int depth_cap = 6;                      // default term enumeration depth bound
};

}  // namespace uag
