#include "detineq/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "detineq/eigen.hpp"
#include "detineq/errors.hpp"
#include "detineq/matrix_io.hpp"
#include "detineq/known_examples.hpp"

namespace detineq {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kBatch = 256;

std::string_view to_string(HypothesisMode m) {
  return m == HypothesisMode::enforce ? "enforce" : "evaluate_anyway";
}

BlockUpperTriangular split(const Witness& w, std::size_t k) {
  return BlockUpperTriangular::from_matrix(w.matrices.at(k), w.r);
}

BlockFamily family_of(const Witness& w) {
  std::vector<BlockUpperTriangular> members;
  for (std::size_t k = 0; k < w.matrices.size(); ++k) members.push_back(split(w, k));
  return BlockFamily(std::move(members));
}

CheckReport log_major_from(const ComplexMatrix& x, double p, const Tolerances& tol) {
  std::vector<double> a;
  for (const Complex& l : general_eigenvalues(x.conjugate() * x, tol).eigenvalues)
    a.push_back(std::abs(l));
  std::sort(a.begin(), a.end(), std::greater<>());
  std::vector<double> b = singular_values(x, tol).values;
  for (double& v : b) v *= v;
  return check_log_major(a, b, p, tol);
}

Witness known_witness(InequalityId predicate, const GeneratorSpec& spec, double p,
                      HypothesisMode mode) {
  const ExampleId id = predicate == InequalityId::e21 ? ExampleId::example3 : ExampleId::example1;
  const BlockFamily fam = example_family(id);
  Witness w{predicate, spec.seed, 0, fam.r(), p, mode, {}};
  for (const auto& t : fam.members()) w.matrices.push_back(t.assemble());
  return w;
}

struct Outcome {
  Verdict verdict = Verdict::precondition_failed;
  double margin = 0.0;
  bool error = false;
};

class Sweep {
 public:
  Sweep(const GeneratorSpec& spec, const SearchOptions& options) : spec_(spec), opt_(options) {
    spec_.validate();
    if (opt_.max_trials == 0) throw ArgumentError("search: max_trials must be at least 1");
    if (opt_.predicate == InequalityId::e21 && spec_.m < 2)
      throw ArgumentError("search: e21 needs a family of at least two members");
  }

  Witness witness(std::uint64_t trial) const {
    if (trial == 0 && opt_.inject_known_witness && is_refutable(opt_.predicate))
      return known_witness(opt_.predicate, spec_, opt_.p, opt_.mode);
    return make_witness(opt_.predicate, generate(spec_, trial), spec_, trial, opt_.p, opt_.mode);
  }

  Outcome run(std::uint64_t trial) const {
    try {
      const CheckReport r = evaluate(witness(trial), opt_.tol);
      return {r.verdict, r.margin, false};
    } catch (const LinalgError&) {
      return {Verdict::precondition_failed, 0.0, true};
    }
  }

  std::vector<Outcome> sweep() const {
    std::vector<Outcome> out;
    out.reserve(opt_.max_trials);
    unsigned workers = opt_.workers ? opt_.workers : std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t start = 0; start < opt_.max_trials; start += kBatch) {
      const std::size_t end = std::min(opt_.max_trials, start + kBatch);
      out.resize(end);
      run_batch(out, start, end, workers);
      if (opt_.stop_on_first_violation) {
        for (std::size_t i = start; i < end; ++i)
          if (!out[i].error && out[i].verdict == Verdict::violated) {
            out.resize(i + 1);
            return out;
          }
      }
    }
    return out;
  }

 private:
  void run_batch(std::vector<Outcome>& out, std::size_t start, std::size_t end,
                 unsigned workers) const {
    if (workers <= 1 || end - start < 2) {
      for (std::size_t i = start; i < end; ++i) out[i] = run(i);
      return;
    }
    std::atomic<std::size_t> next{start};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
      for (std::size_t i = next++; i < end; i = next++) {
        try {
          out[i] = run(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < std::min<std::size_t>(workers, end - start); ++k) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  GeneratorSpec spec_;
  SearchOptions opt_;
};

Violation record(const Sweep& sweep, std::uint64_t trial, const Tolerances& tol) {
  Witness w = sweep.witness(trial);
  CheckReport r = evaluate(w, tol);
  return {trial, w.seed, std::move(w), std::move(r)};
}

json violation_to_json(const Violation& v) {
  return json{{"trial_index", v.trial_index},
              {"seed", v.seed},
              {"witness", witness_to_json(v.witness)},
              {"report", check_report_to_json(v.report)}};
}

const json& member(const json& doc, const char* key, const std::string& location) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw FormatError(std::string("missing key \"") + key + "\"", location);
  return *it;
}

}  // namespace

bool is_refutable(InequalityId predicate) {
  return predicate == InequalityId::cor_c1 || predicate == InequalityId::e21;
}

json witness_to_json(const Witness& w) {
  json mats = json::array();
  for (const auto& m : w.matrices) mats.push_back(matrix_to_json(m));
  return json{{"predicate", std::string(to_string(w.predicate))},
              {"seed", w.seed},
              {"trial_index", w.trial_index},
              {"r", w.r},
              {"p", w.p},
              {"mode", std::string(to_string(w.mode))},
              {"matrices", std::move(mats)}};
}

Witness witness_from_json(const json& doc, const std::string& location) {
  if (!doc.is_object()) throw FormatError("witness must be an object", location);
  Witness w;
  const json& pred = member(doc, "predicate", location);
  const auto id = pred.is_string() ? inequality_from_string(pred.get<std::string>()) : std::nullopt;
  if (!id) throw FormatError("unknown predicate", location + ".predicate");
  w.predicate = *id;
  auto unsigned_field = [&](const char* key) {
    const json& v = member(doc, key, location);
    if (!v.is_number_unsigned()) throw FormatError("expected a nonnegative integer", location + "." + key);
    return v.get<std::uint64_t>();
  };
  w.seed = unsigned_field("seed");
  w.trial_index = unsigned_field("trial_index");
  w.r = static_cast<std::size_t>(unsigned_field("r"));
  const json& p = member(doc, "p", location);
  if (!p.is_number()) throw FormatError("expected a number", location + ".p");
  w.p = p.get<double>();
  const json& mode = member(doc, "mode", location);
  if (mode == "enforce")
    w.mode = HypothesisMode::enforce;
  else if (mode == "evaluate_anyway")
    w.mode = HypothesisMode::evaluate_anyway;
  else
    throw FormatError("mode must be \"enforce\" or \"evaluate_anyway\"", location + ".mode");
  const json& mats = member(doc, "matrices", location);
  if (!mats.is_array() || mats.empty())
    throw FormatError("\"matrices\" must be a nonempty array", location + ".matrices");
  for (std::size_t k = 0; k < mats.size(); ++k)
    w.matrices.push_back(matrix_from_json(mats[k], location + ".matrices[" + std::to_string(k) + "]"));
  return w;
}

Witness make_witness(InequalityId predicate, const Instance& instance, const GeneratorSpec& spec,
                     std::uint64_t trial_index, double p, HypothesisMode mode) {
  Witness w{predicate, spec.seed, trial_index, spec.r, p, mode, {}};
  const ComplexMatrix& square = instance.squares.front();
  switch (predicate) {
    case InequalityId::fischer:
      w.matrices.push_back(gram(square));
      break;
    case InequalityId::thm1:
    case InequalityId::cor_c1:
      for (const auto& b : instance.blocks) w.matrices.push_back(b.assemble());
      break;
    case InequalityId::e21:
      if (instance.blocks.size() < 2) throw ArgumentError("e21 needs two block draws");
      w.matrices = {instance.blocks[0].assemble(), instance.blocks[1].assemble()};
      break;
    case InequalityId::cor_c0:
    case InequalityId::thm2:
    case InequalityId::thm3:
      w.matrices.push_back(instance.blocks.front().assemble());
      break;
    case InequalityId::drury:
      w.matrices.push_back(square.upper_triangle());
      break;
    case InequalityId::lemma1:
    case InequalityId::djokovic:
    case InequalityId::weyl:
    case InequalityId::log_major:
    case InequalityId::schur_identity:
      w.matrices.push_back(square);
      break;
  }
  return w;
}

CheckReport evaluate(const Witness& w, const Tolerances& tol) {
  if (w.matrices.empty()) throw ArgumentError("witness has no matrices");
  const ComplexMatrix& a = w.matrices.front();
  switch (w.predicate) {
    case InequalityId::fischer:
      return check_fischer(a, w.r, tol);
    case InequalityId::thm1:
      return check_thm1(family_of(w), tol);
    case InequalityId::cor_c0:
      return check_cor_c0(split(w, 0), tol);
    case InequalityId::cor_c1:
      return check_cor_c1(family_of(w), w.mode, tol);
    case InequalityId::lemma1:
      return check_lemma1(a, tol);
    case InequalityId::djokovic:
      return check_djokovic(a, tol);
    case InequalityId::thm2:
      return check_thm2(split(w, 0), tol);
    case InequalityId::drury:
      return check_drury(a, tol);
    case InequalityId::thm3:
      return check_thm3(split(w, 0), w.p, tol);
    case InequalityId::weyl:
      return check_weyl(a, tol);
    case InequalityId::log_major:
      return log_major_from(a, w.p, tol);
    case InequalityId::schur_identity:
      return check_schur_identity(a, w.r, tol);
    case InequalityId::e21:
      return check_e21(family_of(w), tol);
  }
  throw ArgumentError("unknown predicate");
}

bool SearchReport::expected_outcome() const {
  return is_refutable(predicate) ? counts.violated > 0 : counts.violated == 0;
}

SearchReport search_violations(const GeneratorSpec& spec, const SearchOptions& options) {
  const Sweep sweep(spec, options);
  const std::vector<Outcome> outcomes = sweep.sweep();

  SearchReport rep;
  rep.predicate = options.predicate;
  rep.spec = spec;
  rep.p = options.p;
  rep.trials = outcomes.size();
  rep.min_margin = kInf;
  std::optional<std::size_t> sharpest;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const Outcome& o = outcomes[i];
    if (o.error) {
      ++rep.counts.errors;
      continue;
    }
    switch (o.verdict) {
      case Verdict::holds_strict:
        ++rep.counts.holds_strict;
        break;
      case Verdict::equality:
        ++rep.counts.equality;
        break;
      case Verdict::violated:
        ++rep.counts.violated;
        if (rep.violations.size() < options.max_recorded)
          rep.violations.push_back(record(sweep, i, options.tol));
        break;
      case Verdict::precondition_failed:
        ++rep.counts.precondition_failed;
        continue;
    }
    rep.min_margin = std::min(rep.min_margin, o.margin);
    if (o.margin > 0.0 && std::isfinite(o.margin) &&
        (!sharpest || o.margin < outcomes[*sharpest].margin))
      sharpest = i;
  }
  if (sharpest) rep.sharpest = record(sweep, *sharpest, options.tol);
  rep.runtime_note = std::to_string(rep.trials) +
                     " trials merged in index order; wall-clock time is not recorded so that "
                     "reports stay reproducible";
  return rep;
}

SearchReport sharpness_probe(const GeneratorSpec& spec, const SearchOptions& options) {
  SearchOptions opt = options;
  opt.stop_on_first_violation = false;
  return search_violations(spec, opt);
}

json search_report_to_json(const SearchReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) violations.push_back(violation_to_json(v));
  const VerdictCounts& c = report.counts;
  return json{{"predicate", std::string(to_string(report.predicate))},
              {"spec", generator_spec_to_json(report.spec)},
              {"p", report.p},
              {"trials", report.trials},
              {"counts",
               {{"holds_strict", c.holds_strict},
                {"equality", c.equality},
                {"violated", c.violated},
                {"precondition_failed", c.precondition_failed},
                {"errors", c.errors}}},
              {"violations", std::move(violations)},
              {"min_margin", number_to_json(report.min_margin)},
              {"sharpest", report.sharpest ? violation_to_json(*report.sharpest) : json(nullptr)},
              {"expected_outcome", report.expected_outcome()},
              {"runtime_note", report.runtime_note}};
}

}  // namespace detineq
