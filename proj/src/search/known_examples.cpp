#include "detineq/known_examples.hpp"

#include <algorithm>
#include <cmath>

#include "detineq/checks.hpp"
#include "detineq/errors.hpp"

namespace detineq {

namespace {

BlockUpperTriangular split(const ComplexMatrix& t) { return BlockUpperTriangular::from_matrix(t, 2); }

double quantity(const CheckReport& report, const std::string& name) {
  if (name == "lhs") return report.lhs.value().real();
  if (name == "rhs") return report.rhs.value().real();
  return report.number(name);
}

}  // namespace

std::string_view to_string(ExampleId id) {
  switch (id) {
    case ExampleId::example1:
      return "example1";
    case ExampleId::remark_minus12:
      return "remark_minus12";
    case ExampleId::example3:
      return "example3";
  }
  return "unknown";
}

std::optional<ExampleId> example_from_string(std::string_view name) {
  for (ExampleId id : all_examples())
    if (to_string(id) == name) return id;
  return std::nullopt;
}

const std::vector<ExampleId>& all_examples() {
  static const std::vector<ExampleId> ids{ExampleId::example1, ExampleId::remark_minus12,
                                          ExampleId::example3};
  return ids;
}

BlockFamily example_family(ExampleId id) {
  switch (id) {
    case ExampleId::example1:
      return BlockFamily({split({{-9, 10, 5, 12}, {-7, 10, -11, -10}, {0, 0, -2, 3}, {0, 0, 2, 26}}),
                          split({{13, -16, 3, 3}, {-7, 9, 3, 11}, {0, 0, 3, -16}, {0, 0, -7, -13}})});
    case ExampleId::remark_minus12: {
      const ComplexMatrix x{{1, 2}, {0, 1}};
      const ComplexMatrix y = ComplexMatrix::zeros(2, 1);
      const ComplexMatrix z{{1}};
      return BlockFamily({BlockUpperTriangular(x, y, z), BlockUpperTriangular(x.transpose(), y, z)});
    }
    case ExampleId::example3:
      return BlockFamily({split({{2, -3, 9, -1}, {-4, 15, 1, -19}, {0, 0, 0, -2}, {0, 0, -4, 19}}),
                          split({{0, 1, 6, 0}, {4, -12, 12, 10}, {0, 0, 14, -2}, {0, 0, 23, -3}})});
  }
  throw ArgumentError("unknown example");
}

CheckReport reproduce_known_example(ExampleId id, const Tolerances& tol) {
  if (id == ExampleId::example3) return check_e21(example_family(id), tol);
  return check_cor_c1(example_family(id), HypothesisMode::evaluate_anyway, tol);
}

const std::vector<ManifestEntry>& reproduction_manifest() {
  static const std::vector<ManifestEntry> m{
      {ExampleId::example1, "lhs", 1.25e8, ToleranceKind::relative, 5e-3},
      {ExampleId::example1, "rhs", 9.93e8, ToleranceKind::relative, 5e-3},
      {ExampleId::remark_minus12, "inner_x_re", -12.0, ToleranceKind::absolute, 1e-9},
      {ExampleId::example3, "lhs", 5193.1, ToleranceKind::relative, 2e-3},
      {ExampleId::example3, "rhs", 20248.0, ToleranceKind::relative, 2e-3},
  };
  return m;
}

Verdict expected_verdict(ExampleId id) {
  // The remark only concerns the sign of an inner determinant; its family has
  // Y = 0 and satisfies the unconditional bound.
  return id == ExampleId::remark_minus12 ? Verdict::holds_strict : Verdict::violated;
}

bool Reproduction::pass() const {
  return verdict_pass &&
         std::all_of(rows.begin(), rows.end(), [](const ReproductionRow& r) { return r.pass; });
}

Reproduction reproduce(ExampleId id, const Tolerances& tol) {
  Reproduction out{id, reproduce_known_example(id, tol), {}, false};
  out.verdict_pass = out.report.verdict == expected_verdict(id);
  for (const auto& e : reproduction_manifest()) {
    if (e.example != id) continue;
    ReproductionRow row{e, quantity(out.report, e.quantity), false};
    const double err = std::abs(row.computed - e.recorded);
    row.pass = e.kind == ToleranceKind::absolute ? err <= e.tolerance
                                                 : err <= e.tolerance * std::abs(e.recorded);
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace detineq
