#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "detineq/check_report.hpp"
#include "detineq/checks.hpp"
#include "detineq/generator.hpp"
#include "detineq/tolerances.hpp"

namespace detineq {

// Self-contained input of one check: re-evaluating it needs nothing else.
struct Witness {
  InequalityId predicate = InequalityId::thm1;
  std::uint64_t seed = 0;
  std::uint64_t trial_index = 0;
  std::size_t r = 1;
  double p = 1.0;
  HypothesisMode mode = HypothesisMode::evaluate_anyway;
  std::vector<ComplexMatrix> matrices;
};

nlohmann::json witness_to_json(const Witness& w);
Witness witness_from_json(const nlohmann::json& doc, const std::string& location = "$");

// Runs the witness's checker.
CheckReport evaluate(const Witness& w, const Tolerances& tol = default_tolerances());

// The witness a given trial feeds to a predicate.
Witness make_witness(InequalityId predicate, const Instance& instance, const GeneratorSpec& spec,
                     std::uint64_t trial_index, double p, HypothesisMode mode);

// cor_c1 and e21 are expected to fail somewhere; everything else is a control.
bool is_refutable(InequalityId predicate);

struct SearchOptions {
  InequalityId predicate = InequalityId::thm1;
  std::size_t max_trials = 1000;
  bool stop_on_first_violation = false;
  // Replace trial 0 with the embedded counterexample of a refutable predicate.
  bool inject_known_witness = true;
  double p = 1.0;
  HypothesisMode mode = HypothesisMode::evaluate_anyway;
  // Violations kept with full witnesses; the count is always exact.
  std::size_t max_recorded = 16;
  // 0 means one worker per hardware thread.
  unsigned workers = 0;
  Tolerances tol = default_tolerances();
};

struct Violation {
  std::uint64_t trial_index = 0;
  std::uint64_t seed = 0;
  Witness witness;
  CheckReport report;
};

struct VerdictCounts {
  std::size_t holds_strict = 0;
  std::size_t equality = 0;
  std::size_t violated = 0;
  std::size_t precondition_failed = 0;
  std::size_t errors = 0;  // the kernel threw (non-convergence, singular block)
};

struct SearchReport {
  InequalityId predicate = InequalityId::thm1;
  GeneratorSpec spec;
  double p = 1.0;
  std::size_t trials = 0;
  VerdictCounts counts;
  std::vector<Violation> violations;
  double min_margin = 0.0;
  std::optional<Violation> sharpest;  // smallest strictly positive margin
  std::string runtime_note;

  bool expected_outcome() const;
};

SearchReport search_violations(const GeneratorSpec& spec, const SearchOptions& options);

// Same sweep, read for the smallest positive margin.
SearchReport sharpness_probe(const GeneratorSpec& spec, const SearchOptions& options);

nlohmann::json search_report_to_json(const SearchReport& report);

}  // namespace detineq
