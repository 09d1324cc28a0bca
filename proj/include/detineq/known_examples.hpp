#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "detineq/check_report.hpp"
#include "detineq/structure.hpp"
#include "detineq/tolerances.hpp"

namespace detineq {

enum class ExampleId { example1, remark_minus12, example3 };

std::string_view to_string(ExampleId id);
std::optional<ExampleId> example_from_string(std::string_view name);
const std::vector<ExampleId>& all_examples();

// The embedded witness matrices.
BlockFamily example_family(ExampleId id);

// The check each example exercises, evaluated on its witness.
CheckReport reproduce_known_example(ExampleId id, const Tolerances& tol = default_tolerances());

enum class ToleranceKind { relative, absolute };

// One recorded quantity and how closely it must be reproduced.
struct ManifestEntry {
  ExampleId example;
  std::string quantity;  // "lhs", "rhs" or a diagnostic name
  double recorded;
  ToleranceKind kind;
  double tolerance;
};

const std::vector<ManifestEntry>& reproduction_manifest();

// Verdict each example must produce.
Verdict expected_verdict(ExampleId id);

struct ReproductionRow {
  ManifestEntry entry;
  double computed = 0.0;
  bool pass = false;
};

struct Reproduction {
  ExampleId example;
  CheckReport report;
  std::vector<ReproductionRow> rows;
  bool verdict_pass = false;

  bool pass() const;
};

Reproduction reproduce(ExampleId id, const Tolerances& tol = default_tolerances());

}  // namespace detineq
