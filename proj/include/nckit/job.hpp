#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace nckit {

// A job file, validated but not yet executed.  The JSON schema (version 1)
// is documented in README.md and exercised by the files under jobs/.
struct CatalogSpec {
  std::string name;  // polynomial | skew | down_up | down_up_assoc_graded
  unsigned n = 0;    // polynomial rank
  std::vector<std::vector<std::string>> q;  // skew commutation scalars
  std::string alpha, beta;                  // down-up parameters
};

struct RawAlgebraSpec {
  std::vector<std::string> generators;
  std::vector<unsigned> degrees;  // same length as generators, default all 1
  std::vector<std::string> relations;
  std::vector<std::vector<long>> multidegrees;  // optional, for twist checks
};

enum class ActionKind { NONE, GROUP, DUAL_GROUP };

struct ActionSpec {
  ActionKind kind = ActionKind::NONE;
  // kind GROUP: generating matrices, entries as scalar expressions
  std::vector<std::vector<std::vector<std::string>>> matrices;
  // kind DUAL_GROUP: the grading group and the degree of each generator
  std::string family;  // cyclic | dihedral
  unsigned n = 0;      // family parameter (dihedral(n) has order 2n)
  std::vector<unsigned> grading;
};

struct TwistSpec {
  bool present = false;
  // eigen[k][j]: direction-k twist eigenvalue of generator j
  std::vector<std::vector<std::string>> eigen;
};

struct JobSpec {
  unsigned cyclotomic_order = 1;
  bool use_catalog = false;
  CatalogSpec catalog;
  RawAlgebraSpec raw;
  ActionSpec action;
  TwistSpec twist;
  std::vector<std::string> analyses;  // validated, in canonical run order
  unsigned degree_bound = 12;
  unsigned guard = 5;
};

// Parses and validates job-file bytes.  Malformed JSON, unknown analyses,
// missing parameters, and shape errors are all rejected as BadInput with a
// location hint.
JobSpec parse_job(const std::string& bytes);

// A finished run: the machine rendering plus the flag the exit code needs.
struct Report {
  nlohmann::ordered_json doc;
  bool undecided = false;
};

// Runs the requested analyses in dependency order.  Module failures are
// rethrown with the failing stage named; a certified disagreement between
// the pertinency / h.smallness / consistency-check routes is an Inconsistent
// error.  The same job bytes always produce the same report bytes.
Report run(const JobSpec& job);

// Renders a report.  format is "json" (schema-stable, version key `schema`)
// or "text" (tabulated dims and verdicts with certainty per value).
std::string emit(const Report& r, const std::string& format);

}  // namespace nckit
