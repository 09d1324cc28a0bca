#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "detineq/check_report.hpp"
#include "detineq/errors.hpp"
#include "detineq/matrix_io.hpp"
#include "detineq/known_examples.hpp"
#include "detineq/search.hpp"

namespace detineq::cli {

namespace {

using nlohmann::json;

enum class Format { human, structured };

struct Common {
  std::string format = "human";
  std::string out_path;
  double tol_eq = 0.0;  // 0 keeps the default
  bool allow_hypothesis_violation = false;
  double p = 1.0;

  Tolerances tolerances() const {
    Tolerances t = default_tolerances();
    if (tol_eq > 0.0) t.equality = tol_eq;
    return t;
  }
  HypothesisMode mode() const {
    return allow_hypothesis_violation ? HypothesisMode::evaluate_anyway : HypothesisMode::enforce;
  }
  Format fmt() const { return format == "structured" ? Format::structured : Format::human; }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string describe(const SignedLogDet& d) {
  if (d.is_zero()) return "0";
  const Complex ph = d.phase();
  std::string s;
  if (d.log_magnitude() < 700.0) {
    const Complex v = d.value();
    s = std::abs(ph.imag()) < 1e-12 ? num(v.real()) : "(" + num(v.real()) + ", " + num(v.imag()) + ")";
  } else {
    s = "phase (" + num(ph.real()) + ", " + num(ph.imag()) + ") * exp(" + num(d.log_magnitude()) + ")";
  }
  return s + "  [log " + num(d.log_magnitude()) + "]";
}

std::string describe(const DiagnosticValue& v) {
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v) ? "true" : "false";
  if (std::holds_alternative<double>(v)) return num(std::get<double>(v));
  return std::get<std::string>(v);
}

void print_report(std::ostream& os, const CheckReport& r) {
  os << "inequality: " << to_string(r.inequality_id) << "\n"
     << "lhs:        " << describe(r.lhs) << "\n"
     << "rhs:        " << describe(r.rhs) << "\n"
     << "margin:     " << num(r.margin) << "\n"
     << "verdict:    " << to_string(r.verdict) << "\n";
  for (const auto& d : r.diagnostics) os << "  " << d.name << ": " << describe(d.value) << "\n";
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::holds_strict:
    case Verdict::equality:
      return kOk;
    case Verdict::violated:
      return kViolated;
    case Verdict::precondition_failed:
      return kPrecondition;
  }
  return kUsage;
}

// Writes to --out when given, else to the terminal stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw UsageError("cannot open output file " + path);
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

std::vector<ComplexMatrix> load_matrices(const std::vector<std::string>& files) {
  std::vector<ComplexMatrix> out;
  for (const auto& f : files) {
    const json doc = parse_json_text(read_text_file(f), f);
    if (doc.is_array()) {
      for (std::size_t k = 0; k < doc.size(); ++k)
        out.push_back(matrix_from_json(doc[k], f + ": $[" + std::to_string(k) + "]"));
    } else {
      out.push_back(matrix_from_json(doc, f + ": $"));
    }
  }
  return out;
}

std::size_t expected_count(InequalityId id) {
  switch (id) {
    case InequalityId::thm1:
    case InequalityId::cor_c1:
      return 0;  // any positive number
    case InequalityId::e21:
      return 2;
    default:
      return 1;
  }
}

bool uses_partition(InequalityId id) {
  switch (id) {
    case InequalityId::lemma1:
    case InequalityId::djokovic:
    case InequalityId::drury:
    case InequalityId::weyl:
    case InequalityId::log_major:
      return false;
    default:
      return true;
  }
}

InequalityId parse_predicate(const std::string& name) {
  const auto id = inequality_from_string(name);
  if (!id) throw UsageError("unknown inequality \"" + name + "\"");
  return *id;
}

void parse_entry_bound(const std::string& text, GeneratorSpec& spec) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const long long b = std::stoll(text, &used);
      if (used != text.size() || b < 0) throw std::invalid_argument(text);
      spec.entry_lo = -b;
      spec.entry_hi = b;
    } else {
      const std::string lo = text.substr(0, comma);
      const std::string hi = text.substr(comma + 1);
      spec.entry_lo = std::stoll(lo, &used);
      if (used != lo.size()) throw std::invalid_argument(text);
      spec.entry_hi = std::stoll(hi, &used);
      if (used != hi.size()) throw std::invalid_argument(text);
    }
  } catch (const std::logic_error&) {
    throw UsageError("--entry-bound expects B or LO,HI, got \"" + text + "\"");
  }
  if (spec.entry_lo > spec.entry_hi) throw UsageError("--entry-bound: LO exceeds HI");
}

struct CheckArgs {
  std::string ineq;
  std::vector<std::string> files;
  std::string witness;
  std::optional<std::size_t> r;
};

int cmd_check(const CheckArgs& a, const Common& c, std::ostream& out) {
  const Tolerances tol = c.tolerances();
  Witness w;
  if (!a.witness.empty()) {
    if (!a.files.empty()) throw UsageError("--witness and matrix files are exclusive");
    w = witness_from_json(parse_json_text(read_text_file(a.witness), a.witness), a.witness + ": $");
    if (!a.ineq.empty() && parse_predicate(a.ineq) != w.predicate)
      throw UsageError("--ineq does not match the witness predicate");
  } else {
    if (a.ineq.empty()) throw UsageError("check needs --ineq or --witness");
    if (a.files.empty()) throw UsageError("check needs at least one matrix file");
    w.predicate = parse_predicate(a.ineq);
    w.matrices = load_matrices(a.files);
    w.p = c.p;
    w.mode = c.mode();
    const std::size_t want = expected_count(w.predicate);
    if (want != 0 && w.matrices.size() != want)
      throw UsageError(std::string(to_string(w.predicate)) + " takes " + std::to_string(want) +
                       " matrix(es), got " + std::to_string(w.matrices.size()));
    const std::size_t n = w.matrices.front().rows();
    w.r = a.r.value_or(n / 2);
    if (uses_partition(w.predicate) && (w.r == 0 || w.r >= n))
      throw UsageError("--r must satisfy 0 < r < n = " + std::to_string(n));
  }
  const CheckReport rep = evaluate(w, tol);
  Sink sink(c.out_path, out);
  if (c.fmt() == Format::structured)
    sink.stream() << check_report_to_json(rep).dump() << "\n";
  else
    print_report(sink.stream(), rep);
  return exit_for(rep.verdict);
}

json reproduction_to_json(const Reproduction& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back(json{{"quantity", row.entry.quantity},
                        {"computed", number_to_json(row.computed)},
                        {"recorded", row.entry.recorded},
                        {"tolerance", row.entry.tolerance},
                        {"tolerance_kind",
                         row.entry.kind == ToleranceKind::relative ? "relative" : "absolute"},
                        {"pass", row.pass}});
  return json{{"example", std::string(to_string(r.example))},
              {"verdict", std::string(to_string(r.report.verdict))},
              {"expected_verdict", std::string(to_string(expected_verdict(r.example)))},
              {"rows", std::move(rows)},
              {"pass", r.pass()}};
}

int cmd_reproduce(const std::string& which, const Common& c, std::ostream& out) {
  std::vector<ExampleId> ids;
  if (which == "all") {
    ids = all_examples();
  } else {
    const auto id = example_from_string(which);
    if (!id) throw UsageError("unknown example \"" + which + "\" (example1, remark_minus12, example3, all)");
    ids.push_back(*id);
  }
  Sink sink(c.out_path, out);
  std::ostream& os = sink.stream();
  bool all_pass = true;
  if (c.fmt() == Format::human) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-16s %-11s %16s %16s %12s  %s\n", "example", "quantity",
                  "computed", "recorded", "tolerance", "result");
    os << buf;
  }
  for (ExampleId id : ids) {
    const Reproduction r = reproduce(id, c.tolerances());
    all_pass = all_pass && r.pass();
    if (c.fmt() == Format::structured) {
      os << reproduction_to_json(r).dump() << "\n";
      continue;
    }
    char buf[200];
    for (const auto& row : r.rows) {
      const std::string tol = (row.entry.kind == ToleranceKind::relative ? "rel " : "abs ") +
                              num(row.entry.tolerance);
      std::snprintf(buf, sizeof buf, "%-16s %-11s %16s %16s %12s  %s\n",
                    std::string(to_string(id)).c_str(), row.entry.quantity.c_str(),
                    num(row.computed).c_str(), num(row.entry.recorded).c_str(), tol.c_str(),
                    row.pass ? "pass" : "FAIL");
      os << buf;
    }
    std::snprintf(buf, sizeof buf, "%-16s %-11s %16s %16s %12s  %s\n",
                  std::string(to_string(id)).c_str(), "verdict",
                  std::string(to_string(r.report.verdict)).c_str(),
                  std::string(to_string(expected_verdict(id))).c_str(), "exact",
                  r.verdict_pass ? "pass" : "FAIL");
    os << buf;
  }
  return all_pass ? kOk : kViolated;
}

struct FuzzArgs {
  std::string predicate;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::size_t n = 4;
  std::size_t r = 2;
  std::size_t m = 2;
  std::string family = "integer_uniform";
  std::string entry_bound;
  double scale = 1.0;
  double offdiag_scale = 1.0;
  double perturbation = 0.0;
  bool stop_on_first = false;
  bool no_known_witness = false;
  unsigned workers = 0;
};

void print_search(std::ostream& os, const SearchReport& rep, bool probe) {
  const VerdictCounts& c = rep.counts;
  os << (probe ? "sharpness probe: " : "search: ") << to_string(rep.predicate) << " over "
     << to_string(rep.spec.family) << " (n=" << rep.spec.n << ", r=" << rep.spec.r
     << ", m=" << rep.spec.m << ", seed=" << rep.spec.seed << ")\n"
     << "trials:              " << rep.trials << "\n"
     << "holds_strict:        " << c.holds_strict << "\n"
     << "equality:            " << c.equality << "\n"
     << "violated:            " << c.violated << "\n"
     << "precondition_failed: " << c.precondition_failed << "\n"
     << "errors:              " << c.errors << "\n"
     << "min margin:          " << num(rep.min_margin) << "\n";
  if (rep.sharpest)
    os << "sharpest positive:   " << num(rep.sharpest->report.margin) << " at trial "
       << rep.sharpest->trial_index << "\n";
  for (const auto& v : rep.violations)
    os << "violation at trial " << v.trial_index << ": margin " << num(v.report.margin) << "\n";
  if (rep.violations.size() < c.violated)
    os << "(" << c.violated - rep.violations.size() << " further violations not recorded)\n";
  os << "expected outcome:    " << (rep.expected_outcome() ? "yes" : "no") << "\n";
}

int cmd_fuzz(const FuzzArgs& a, const Common& c, bool probe, std::ostream& out, std::ostream& err) {
  GeneratorSpec spec;
  const auto fam = family_from_string(a.family);
  if (!fam) throw UsageError("unknown family \"" + a.family + "\"");
  spec.family = *fam;
  spec.n = a.n;
  spec.r = a.r;
  spec.m = a.m;
  spec.seed = a.seed;
  spec.scale = a.scale;
  spec.offdiag_scale = a.offdiag_scale;
  spec.perturbation = a.perturbation;
  if (!a.entry_bound.empty()) parse_entry_bound(a.entry_bound, spec);

  SearchOptions opt;
  opt.predicate = parse_predicate(a.predicate);
  opt.max_trials = a.trials;
  opt.stop_on_first_violation = a.stop_on_first;
  opt.inject_known_witness = !a.no_known_witness;
  opt.p = c.p;
  opt.mode = c.mode();
  opt.workers = a.workers;
  opt.tol = c.tolerances();

  const auto start = std::chrono::steady_clock::now();
  const SearchReport rep = probe ? sharpness_probe(spec, opt) : search_violations(spec, opt);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  err << "elapsed " << num(elapsed.count()) << " s\n";

  Sink sink(c.out_path, out);
  if (c.fmt() == Format::structured)
    sink.stream() << search_report_to_json(rep).dump() << "\n";
  else
    print_search(sink.stream(), rep, probe);
  if (probe) return kOk;
  return rep.expected_outcome() ? kOk : kViolated;
}

void add_common(CLI::App* sub, Common& c, bool with_mode) {
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"human", "structured"}));
  sub->add_option("--out", c.out_path, "Write the report to this file");
  sub->add_option("--tol-eq", c.tol_eq, "Log-domain equality tolerance")
      ->check(CLI::PositiveNumber);
  if (with_mode) {
    sub->add_flag("--allow-hypothesis-violation", c.allow_hypothesis_violation,
                  "Report the unconditional verdict when normality fails (cor_c1)");
    sub->add_option("--p", c.p, "Exponent for thm3 and log_major")->check(CLI::Range(1.0, 1e6));
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Determinantal inequality checker, fuzzer and reproduction harness", "detineq"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common common;
  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Evaluate one inequality on matrices read from files");
  check->add_option("--ineq", check_args.ineq, "Inequality id");
  check->add_option("files", check_args.files, "Matrix files (a matrix or an array of matrices)");
  check->add_option("--witness", check_args.witness, "Re-check a witness file");
  check->add_option("--r", check_args.r, "Leading block size (default n/2)");
  add_common(check, common, true);

  std::string example;
  auto* repro = app.add_subcommand("reproduce", "Recompute the recorded counterexample values");
  repro->add_option("example", example, "example1, remark_minus12, example3 or all")->required();
  add_common(repro, common, false);

  FuzzArgs fuzz_args;
  auto add_fuzz = [&](CLI::App* sub) {
    sub->add_option("--predicate,--ineq", fuzz_args.predicate, "Inequality id")->required();
    sub->add_option("--trials", fuzz_args.trials, "Number of trials")->check(CLI::PositiveNumber);
    sub->add_option("--seed", fuzz_args.seed, "Generator seed");
    sub->add_option("--n", fuzz_args.n, "Dimension");
    sub->add_option("--r", fuzz_args.r, "Leading block size");
    sub->add_option("--m", fuzz_args.m, "Family size");
    sub->add_option("--family", fuzz_args.family, "Generator family");
    sub->add_option("--entry-bound", fuzz_args.entry_bound, "Integer range B or LO,HI");
    sub->add_option("--scale", fuzz_args.scale, "Gaussian entry scale")->check(CLI::PositiveNumber);
    sub->add_option("--offdiag-scale", fuzz_args.offdiag_scale, "Scale of the off-diagonal block")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--perturbation", fuzz_args.perturbation, "Additive Gaussian noise")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--workers", fuzz_args.workers, "Worker threads (0 = all cores)");
    sub->add_flag("--no-known-witness", fuzz_args.no_known_witness,
                  "Do not inject the embedded counterexample as trial 0");
    add_common(sub, common, true);
  };
  auto* fuzz = app.add_subcommand("fuzz", "Search random inputs for violations");
  add_fuzz(fuzz);
  fuzz->add_flag("--stop-on-first", fuzz_args.stop_on_first, "Stop at the first violation");
  auto* probe = app.add_subcommand("probe", "Find the smallest positive margin");
  add_fuzz(probe);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*check) return cmd_check(check_args, common, out);
    if (*repro) return cmd_reproduce(example, common, out);
    if (*fuzz) return cmd_fuzz(fuzz_args, common, false, out, err);
    if (*probe) return cmd_fuzz(fuzz_args, common, true, out, err);
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const LinalgError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace detineq::cli
