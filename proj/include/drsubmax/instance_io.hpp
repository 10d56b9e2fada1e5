#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "drsubmax/dr_function.hpp"
#include "drsubmax/polytope.hpp"
#include "drsubmax/solver.hpp"

namespace drsubmax {

// Line-based instance files (see README for the grammar):
//   family quadratic | cut | coverage | table
//   n <int>
//   quadratic: "H i j v" (v <= 0), "h i v", "c v"
//   cut:       "edge u v w"
//   coverage:  "element e w", "cover u e"
//   table:     "value mask v" (missing masks default to 0)
//   set families may add "mode sampled <count> <seed>"
//
// Strictness: Strict rejects quadratics with positive H entries (not
// DR-submodular); Permissive loads them anyway so the verification suites can
// demonstrate non-DR violations.
enum class LoadStrictness { Strict, Permissive };

struct LoadedInstance {
  DrFunction F;
  std::optional<SetFunction> set_function;  // present for set-backed families
  std::string family;
  int n = 0;
};

LoadedInstance load_instance(const std::string& path,
                             LoadStrictness strictness = LoadStrictness::Strict);

// Constraint files:
//   constraint hypercube | cardinality | knapsack | partition | packing
//   n <int>
//   cardinality: "k <v>"
//   knapsack:    "weight u w", "budget B"
//   partition:   "group u u ...", "cap c c ..." (one capacity per group)
//   packing:     "row a1 .. an <= b"
PackingPolytope load_constraint(const std::string& path);

// Deterministic JSON serialization of a solve report (stable key order,
// %.17g doubles). Wall time is intentionally omitted: reruns with the same
// config and seed must produce byte-identical files.
std::string report_to_json(const SolveReport& report, const std::string& instance_path,
                           const std::string& constraint_path);

// One-row CSV summary; oracle_opt < 0 means "not computed" and leaves the
// oracle columns empty.
std::string report_to_csv_row(const SolveReport& report, const std::string& instance_path,
                              int n, double oracle_opt);
std::string csv_header();

std::string format_double(double v);  // shortest stable %.17g rendering

}  // namespace drsubmax
