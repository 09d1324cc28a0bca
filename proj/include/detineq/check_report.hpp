#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "detineq/determinant.hpp"

namespace detineq {

enum class InequalityId {
  fischer,
  thm1,
  cor_c0,
  cor_c1,
  lemma1,
  djokovic,
  thm2,
  drury,
  thm3,
  weyl,
  log_major,
  schur_identity,
  e21,
};

enum class Verdict { holds_strict, equality, violated, precondition_failed };

std::string_view to_string(InequalityId id);
std::string_view to_string(Verdict v);
std::optional<InequalityId> inequality_from_string(std::string_view name);
std::optional<Verdict> verdict_from_string(std::string_view name);
const std::vector<InequalityId>& all_inequalities();

using DiagnosticValue = std::variant<bool, double, std::string>;

struct Diagnostic {
  std::string name;
  DiagnosticValue value;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

// One evaluation of one inequality. The two sides are oriented so that the
// inequality claims lhs >= rhs; margin = log|lhs| - log|rhs|.
struct CheckReport {
  InequalityId inequality_id = InequalityId::fischer;
  SignedLogDet lhs;
  SignedLogDet rhs;
  double margin = 0.0;
  Verdict verdict = Verdict::precondition_failed;
  std::vector<Diagnostic> diagnostics;

  const Diagnostic* find(std::string_view name) const;
  // Throws std::out_of_range if the diagnostic is missing or of another type.
  bool flag(std::string_view name) const;
  double number(std::string_view name) const;
  const std::string& text(std::string_view name) const;

  void add(std::string name, DiagnosticValue value);
};

nlohmann::json signed_log_det_to_json(const SignedLogDet& d);
SignedLogDet signed_log_det_from_json(const nlohmann::json& doc, const std::string& location);

nlohmann::json check_report_to_json(const CheckReport& report);
CheckReport check_report_from_json(const nlohmann::json& doc, const std::string& location = "$");

// Non-finite doubles are written as the strings "inf", "-inf", "nan".
nlohmann::json number_to_json(double v);
double number_from_json(const nlohmann::json& v, const std::string& location);

}  // namespace detineq
