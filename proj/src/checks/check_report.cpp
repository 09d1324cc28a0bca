#include "detineq/check_report.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "detineq/errors.hpp"

namespace detineq {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<InequalityId, std::string_view>, 13> kIds{{
    {InequalityId::fischer, "fischer"},
    {InequalityId::thm1, "thm1"},
    {InequalityId::cor_c0, "cor_c0"},
    {InequalityId::cor_c1, "cor_c1"},
    {InequalityId::lemma1, "lemma1"},
    {InequalityId::djokovic, "djokovic"},
    {InequalityId::thm2, "thm2"},
    {InequalityId::drury, "drury"},
    {InequalityId::thm3, "thm3"},
    {InequalityId::weyl, "weyl"},
    {InequalityId::log_major, "log_major"},
    {InequalityId::schur_identity, "schur_identity"},
    {InequalityId::e21, "e21"},
}};

constexpr std::array<std::pair<Verdict, std::string_view>, 4> kVerdicts{{
    {Verdict::holds_strict, "holds_strict"},
    {Verdict::equality, "equality"},
    {Verdict::violated, "violated"},
    {Verdict::precondition_failed, "precondition_failed"},
}};

const json& member(const json& doc, const char* key, const std::string& location) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw FormatError(std::string("missing key \"") + key + "\"", location);
  return *it;
}

}  // namespace

std::string_view to_string(InequalityId id) {
  for (const auto& [k, name] : kIds)
    if (k == id) return name;
  return "unknown";
}

std::string_view to_string(Verdict v) {
  for (const auto& [k, name] : kVerdicts)
    if (k == v) return name;
  return "unknown";
}

std::optional<InequalityId> inequality_from_string(std::string_view name) {
  for (const auto& [k, n] : kIds)
    if (n == name) return k;
  return std::nullopt;
}

std::optional<Verdict> verdict_from_string(std::string_view name) {
  for (const auto& [k, n] : kVerdicts)
    if (n == name) return k;
  return std::nullopt;
}

const std::vector<InequalityId>& all_inequalities() {
  static const std::vector<InequalityId> ids = [] {
    std::vector<InequalityId> v;
    for (const auto& [k, _] : kIds) v.push_back(k);
    return v;
  }();
  return ids;
}

const Diagnostic* CheckReport::find(std::string_view name) const {
  for (const auto& d : diagnostics)
    if (d.name == name) return &d;
  return nullptr;
}

bool CheckReport::flag(std::string_view name) const {
  const Diagnostic* d = find(name);
  if (!d || !std::holds_alternative<bool>(d->value))
    throw std::out_of_range("no boolean diagnostic " + std::string(name));
  return std::get<bool>(d->value);
}

double CheckReport::number(std::string_view name) const {
  const Diagnostic* d = find(name);
  if (!d || !std::holds_alternative<double>(d->value))
    throw std::out_of_range("no numeric diagnostic " + std::string(name));
  return std::get<double>(d->value);
}

const std::string& CheckReport::text(std::string_view name) const {
  const Diagnostic* d = find(name);
  if (!d || !std::holds_alternative<std::string>(d->value))
    throw std::out_of_range("no text diagnostic " + std::string(name));
  return std::get<std::string>(d->value);
}

void CheckReport::add(std::string name, DiagnosticValue value) {
  diagnostics.push_back({std::move(name), std::move(value)});
}

json number_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const json& v, const std::string& location) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw FormatError("expected a number", location);
}

json signed_log_det_to_json(const SignedLogDet& d) {
  return json{{"phase_re", d.phase().real()},
              {"phase_im", d.phase().imag()},
              {"log_magnitude", number_to_json(d.log_magnitude())},
              {"is_zero", d.is_zero()}};
}

SignedLogDet signed_log_det_from_json(const json& doc, const std::string& location) {
  if (!doc.is_object()) throw FormatError("determinant must be an object", location);
  const json& z = member(doc, "is_zero", location);
  if (!z.is_boolean()) throw FormatError("\"is_zero\" must be boolean", location + ".is_zero");
  if (z.get<bool>()) return SignedLogDet::zero();
  const double re = number_from_json(member(doc, "phase_re", location), location + ".phase_re");
  const double im = number_from_json(member(doc, "phase_im", location), location + ".phase_im");
  const double lm =
      number_from_json(member(doc, "log_magnitude", location), location + ".log_magnitude");
  if (!std::isfinite(lm) || std::abs(std::abs(Complex(re, im)) - 1.0) > 1e-12)
    throw FormatError("phase must be unit modulus and log magnitude finite", location);
  return SignedLogDet(Complex(re, im), lm);
}

json check_report_to_json(const CheckReport& report) {
  json diags = json::array();
  for (const auto& d : report.diagnostics) {
    json value = std::visit(
        [](const auto& v) -> json {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>)
            return number_to_json(v);
          else
            return v;
        },
        d.value);
    diags.push_back(json{{"name", d.name}, {"value", std::move(value)}});
  }
  return json{{"inequality_id", std::string(to_string(report.inequality_id))},
              {"lhs", signed_log_det_to_json(report.lhs)},
              {"rhs", signed_log_det_to_json(report.rhs)},
              {"margin", number_to_json(report.margin)},
              {"verdict", std::string(to_string(report.verdict))},
              {"diagnostics", std::move(diags)}};
}

CheckReport check_report_from_json(const json& doc, const std::string& location) {
  if (!doc.is_object()) throw FormatError("check report must be an object", location);
  CheckReport r;
  const json& id = member(doc, "inequality_id", location);
  const auto parsed_id = id.is_string() ? inequality_from_string(id.get<std::string>()) : std::nullopt;
  if (!parsed_id) throw FormatError("unknown inequality_id", location + ".inequality_id");
  r.inequality_id = *parsed_id;
  r.lhs = signed_log_det_from_json(member(doc, "lhs", location), location + ".lhs");
  r.rhs = signed_log_det_from_json(member(doc, "rhs", location), location + ".rhs");
  r.margin = number_from_json(member(doc, "margin", location), location + ".margin");
  const json& v = member(doc, "verdict", location);
  const auto parsed_v = v.is_string() ? verdict_from_string(v.get<std::string>()) : std::nullopt;
  if (!parsed_v) throw FormatError("unknown verdict", location + ".verdict");
  r.verdict = *parsed_v;
  const json& diags = member(doc, "diagnostics", location);
  if (!diags.is_array()) throw FormatError("\"diagnostics\" must be an array", location + ".diagnostics");
  for (std::size_t k = 0; k < diags.size(); ++k) {
    const std::string where = location + ".diagnostics[" + std::to_string(k) + "]";
    const json& d = diags[k];
    if (!d.is_object() || !d.contains("name") || !d["name"].is_string() || !d.contains("value"))
      throw FormatError("diagnostic must be {name, value}", where);
    const json& val = d["value"];
    DiagnosticValue dv;
    if (val.is_boolean())
      dv = val.get<bool>();
    else if (val.is_number())
      dv = val.get<double>();
    else if (val.is_string()) {
      const auto& s = val.get_ref<const std::string&>();
      if (s == "inf" || s == "-inf" || s == "nan")
        dv = number_from_json(val, where);
      else
        dv = s;
    } else
      throw FormatError("diagnostic value must be bool, number or string", where + ".value");
    r.diagnostics.push_back({d["name"].get<std::string>(), std::move(dv)});
  }
  return r;
}

}  // namespace detineq
