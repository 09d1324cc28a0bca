// One line per acceptance criterion; exit status is nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "detineq/checks.hpp"
#include "detineq/determinant.hpp"
#include "detineq/known_examples.hpp"
#include "detineq/search.hpp"
#include "oracle/exact.hpp"

using namespace detineq;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool within_rel(double v, double target, double rel) { return std::abs(v - target) <= rel * std::abs(target); }

Outcome criterion1() {
  const auto t0 = Clock::now();
  const CheckReport r = reproduce_known_example(ExampleId::example1);
  const double elapsed = seconds_since(t0);
  const double lhs = r.lhs.value().real();
  const double rhs = r.rhs.value().real();
  const bool ok = within_rel(lhs, 1.25e8, 5e-3) && within_rel(rhs, 9.93e8, 5e-3) &&
                  r.verdict == Verdict::violated && elapsed < 1.0;
  return {ok, fmt("lhs %.6g (1.25e8), rhs %.6g (9.93e8), verdict %s, %.4f s", lhs, rhs,
                  std::string(to_string(r.verdict)).c_str(), elapsed)};
}

Outcome criterion2() {
  const CheckReport r = reproduce_known_example(ExampleId::remark_minus12);
  const double v = r.number("inner_x_re");
  const double im = r.number("inner_x_im");
  return {std::abs(v + 12.0) <= 1e-9 && std::abs(im) <= 1e-9, fmt("inner determinant %.15g%+.3gi", v, im)};
}

Outcome criterion3() {
  const CheckReport r = reproduce_known_example(ExampleId::example3);
  const double lhs = r.lhs.value().real();
  const double rhs = r.rhs.value().real();
  const bool ok = within_rel(lhs, 5193.1, 2e-3) && within_rel(rhs, 20248.0, 2e-3) &&
                  r.verdict == Verdict::violated;
  return {ok, fmt("lhs %.8g (5193.1), rhs %.8g (20248), verdict %s", lhs, rhs,
                  std::string(to_string(r.verdict)).c_str())};
}

Outcome criterion4() {
  struct Config {
    std::size_t n, r, m, trials;
  };
  // 10,000 trials per predicate and family, spread over dimensions up to 8.
  const std::vector<Config> configs{{2, 1, 1, 2500}, {4, 2, 2, 2500}, {6, 2, 3, 2500}, {8, 3, 4, 2500}};
  struct Target {
    InequalityId id;
    double p;
  };
  const std::vector<Target> targets{{InequalityId::thm1, 1.0},   {InequalityId::cor_c0, 1.0},
                                    {InequalityId::thm2, 1.0},   {InequalityId::drury, 1.0},
                                    {InequalityId::thm3, 1.0},   {InequalityId::thm3, 1.5},
                                    {InequalityId::thm3, 2.0},   {InequalityId::thm3, 3.0}};
  const auto t0 = Clock::now();
  std::size_t trials = 0, violated = 0, errors = 0;
  std::string worst;
  for (const Target& t : targets) {
    for (Family f : all_families()) {
      for (const Config& c : configs) {
        GeneratorSpec spec;
        spec.family = f;
        spec.n = c.n;
        spec.r = c.r;
        spec.m = c.m;
        spec.seed = 20240 + trials;
        SearchOptions opt;
        opt.predicate = t.id;
        opt.p = t.p;
        opt.max_trials = c.trials;
        const SearchReport rep = search_violations(spec, opt);
        trials += rep.trials;
        violated += rep.counts.violated;
        errors += rep.counts.errors;
        if (rep.counts.violated || rep.counts.errors)
          worst += fmt(" [%s p=%g %s n=%zu: %zu violated, %zu errors]",
                       std::string(to_string(t.id)).c_str(), t.p, std::string(to_string(f)).c_str(),
                       c.n, rep.counts.violated, rep.counts.errors);
      }
    }
  }
  const double elapsed = seconds_since(t0);
  return {violated == 0 && errors == 0 && elapsed < 300.0,
          fmt("%zu trials, %zu violated, %zu kernel errors, %.1f s", trials, violated, errors, elapsed) +
              worst};
}

// Builders for criterion 5. Each returns a check report for trial k.
struct IffCase {
  const char* name;
  std::function<CheckReport(std::mt19937_64&, std::size_t)> equal;
  std::function<CheckReport(std::mt19937_64&, std::size_t)> broken;
};

ComplexMatrix gaussian(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> g;
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const double re = g(rng);
      m(i, j) = Complex(re, g(rng));
    }
  return m;
}

// Random matrix of the given Frobenius norm.
ComplexMatrix with_norm(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double norm) {
  ComplexMatrix m = gaussian(rng, rows, cols);
  m *= norm / frobenius_norm(m);
  return m;
}

double break_size(std::mt19937_64& rng) { return std::uniform_real_distribution<double>(0.1, 1.0)(rng); }

ComplexMatrix symmetric(std::mt19937_64& rng, std::size_t n) {
  const ComplexMatrix a = gaussian(rng, n, n);
  return 0.5 * (a + a.transpose());
}

// Antisymmetric matrix of the given Frobenius norm (its distance from the
// symmetric matrices when added to one).
ComplexMatrix skew(std::mt19937_64& rng, std::size_t n, double norm) {
  const ComplexMatrix a = gaussian(rng, n, n);
  ComplexMatrix k = 0.5 * (a - a.transpose());
  k *= norm / frobenius_norm(k);
  return k;
}

std::size_t dim(std::size_t k) { return 2 + k % 4; }

std::vector<IffCase> iff_cases() {
  std::vector<IffCase> cases;
  cases.push_back({"cor_c0",
                   [](std::mt19937_64& g, std::size_t k) {
                     const std::size_t n = dim(k), r = 1 + k % (n - 1);
                     return check_cor_c0({gaussian(g, r, r), ComplexMatrix::zeros(r, n - r), gaussian(g, n - r, n - r)});
                   },
                   [](std::mt19937_64& g, std::size_t k) {
                     const std::size_t n = dim(k), r = 1 + k % (n - 1);
                     return check_cor_c0({gaussian(g, r, r), with_norm(g, r, n - r, break_size(g)),
                                          gaussian(g, n - r, n - r)});
                   }});
  cases.push_back({"lemma1",
                   [](std::mt19937_64& g, std::size_t k) { return check_lemma1(symmetric(g, dim(k))); },
                   [](std::mt19937_64& g, std::size_t k) {
                     const std::size_t n = dim(k);
                     return check_lemma1(symmetric(g, n) + skew(g, n, break_size(g)));
                   }});
  cases.push_back({"thm2",
                   [](std::mt19937_64& g, std::size_t k) {
                     const std::size_t n = dim(k), r = 1 + k % (n - 1);
                     return check_thm2({symmetric(g, r), ComplexMatrix::zeros(r, n - r), symmetric(g, n - r)});
                   },
                   [](std::mt19937_64& g, std::size_t k) {
                     const std::size_t n = 3 + k % 3, r = 1 + k % (n - 1);
                     ComplexMatrix x = symmetric(g, r);
                     ComplexMatrix y = ComplexMatrix::zeros(r, n - r);
                     ComplexMatrix z = symmetric(g, n - r);
                     // Break one of the three conditions; 1x1 blocks cannot be asymmetric.
                     switch (k % 3) {
                       case 0:
                         y = with_norm(g, r, n - r, break_size(g));
                         break;
                       case 1:
                         if (r > 1) x += skew(g, r, break_size(g));
                         else y = with_norm(g, r, n - r, break_size(g));
                         break;
                       default:
                         if (n - r > 1) z += skew(g, n - r, break_size(g));
                         else y = with_norm(g, r, n - r, break_size(g));
                     }
                     return check_thm2({x, y, z});
                   }});
  cases.push_back({"drury",
                   [](std::mt19937_64& g, std::size_t k) {
                     const ComplexMatrix d = gaussian(g, 1, dim(k));
                     return check_drury(ComplexMatrix::diagonal(d.entries()));
                   },
                   [](std::mt19937_64& g, std::size_t k) {
                     const std::size_t n = dim(k);
                     const ComplexMatrix d = gaussian(g, 1, n);
                     ComplexMatrix t = ComplexMatrix::diagonal(d.entries());
                     ComplexMatrix upper = gaussian(g, n, n).upper_triangle();
                     for (std::size_t i = 0; i < n; ++i) upper(i, i) = 0.0;
                     upper *= break_size(g) / frobenius_norm(upper);
                     return check_drury(t + upper);
                   }});
  cases.push_back({"thm3",
                   [](std::mt19937_64& g, std::size_t k) {
                     const std::size_t n = dim(k), r = 1 + k % (n - 1);
                     const double p = std::vector<double>{1.0, 1.5, 2.0, 3.0}[k % 4];
                     return check_thm3({gaussian(g, r, r), ComplexMatrix::zeros(r, n - r), gaussian(g, n - r, n - r)}, p);
                   },
                   [](std::mt19937_64& g, std::size_t k) {
                     const std::size_t n = dim(k), r = 1 + k % (n - 1);
                     const double p = std::vector<double>{1.0, 1.5, 2.0, 3.0}[k % 4];
                     return check_thm3({gaussian(g, r, r), with_norm(g, r, n - r, break_size(g)),
                                        gaussian(g, n - r, n - r)}, p);
                   }});
  return cases;
}

Outcome criterion5() {
  bool ok = true;
  std::string detail;
  std::mt19937_64 rng(5);
  for (const IffCase& c : iff_cases()) {
    std::size_t eq_ok = 0, strict_ok = 0;
    double min_broken_margin = INFINITY;
    for (std::size_t k = 0; k < 1000; ++k) {
      if (c.equal(rng, k).verdict == Verdict::equality) ++eq_ok;
      const CheckReport b = c.broken(rng, k);
      if (b.verdict == Verdict::holds_strict && b.margin > 0.0) ++strict_ok;
      min_broken_margin = std::min(min_broken_margin, b.margin);
    }
    ok = ok && eq_ok == 1000 && strict_ok == 1000;
    detail += fmt("%s %zu/1000 equality, %zu/1000 strict (min margin %.2e); ", c.name, eq_ok, strict_ok,
                  min_broken_margin);
  }
  return {ok, detail};
}

Outcome criterion6() {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<long long> u(-20, 26);
  double worst_log = 0.0, worst_phase = 0.0;
  std::size_t failures = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + t % 5;
    oracle::Grid g(n, std::vector<oracle::ExactComplex>(n));
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const long long re = u(rng);
        const long long im = t % 2 ? u(rng) : 0;
        g[i][j] = oracle::ExactComplex(oracle::Rational(re), oracle::Rational(im));
        a(i, j) = Complex(static_cast<double>(re), static_cast<double>(im));
      }
    const oracle::ExactComplex exact = oracle::exact_det(g);
    const SignedLogDet d = det(a);
    if (exact.is_zero()) {
      failures += d.is_zero() ? 0 : 1;
      continue;
    }
    if (d.is_zero()) {
      ++failures;
      continue;
    }
    const double ref = static_cast<double>(oracle::exact_log_abs(exact));
    const double dlog = std::abs(d.log_magnitude() - ref) / std::max(1.0, std::abs(ref));
    const auto ph = oracle::exact_phase(exact);
    const double dph = std::abs(d.phase() - Complex(static_cast<double>(ph.real()), static_cast<double>(ph.imag())));
    worst_log = std::max(worst_log, dlog);
    worst_phase = std::max(worst_phase, dph);
    if (dlog > 1e-10 || dph > 1e-10) ++failures;
  }
  return {failures == 0, fmt("1000 matrices, %zu disagreements, worst log %.2e, worst phase %.2e", failures,
                             worst_log, worst_phase)};
}

Outcome criterion7() {
  std::mt19937_64 rng(7);
  std::size_t weyl_ok = 0, schur_ok = 0, agree_ok = 0;
  double worst_gap = 0.0;
  for (std::size_t k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + k % 8;
    const CheckReport w = check_weyl(gaussian(rng, n, n));
    if (w.verdict == Verdict::equality || w.verdict == Verdict::holds_strict) ++weyl_ok;
    const std::size_t m = 2 + k % 7;
    const CheckReport s = check_schur_identity(gaussian(rng, m, m), 1 + k % (m - 1));
    if (s.verdict == Verdict::equality) ++schur_ok;
    const std::size_t r = 1 + k % (m - 1);
    const BlockUpperTriangular t(gaussian(rng, r, r), gaussian(rng, r, m - r), gaussian(rng, m - r, m - r));
    const double gap = std::abs(check_thm3(t, 2.0).margin - check_cor_c0(t).margin);
    worst_gap = std::max(worst_gap, gap);
    if (gap <= 1e-8) ++agree_ok;
  }
  return {weyl_ok == 1000 && schur_ok == 1000 && agree_ok == 1000,
          fmt("weyl %zu/1000, schur identity %zu/1000, thm3(p=2) vs cor_c0 %zu/1000 (worst %.2e)", weyl_ok,
              schur_ok, agree_ok, worst_gap)};
}

Outcome criterion8() {
  auto once = [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return std::make_pair(code, out.str());
  };
  const std::vector<std::string> thm1{"fuzz", "--predicate", "thm1", "--trials", "2000", "--seed", "42",
                                      "--format", "structured"};
  const std::vector<std::string> e21{"fuzz", "--predicate", "e21", "--trials", "500", "--seed", "42",
                                     "--format", "structured"};
  const auto a = once(thm1), b = once(thm1), c = once(e21), d = once(e21);
  const bool ok = a.first == 0 && c.first == 0 && a.second == b.second && c.second == d.second &&
                  !a.second.empty() && !c.second.empty();
  return {ok, fmt("thm1 report %zu bytes, e21 report %zu bytes, identical: %s", a.second.size(),
                  c.second.size(), ok ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"1 example 1 reproduction", criterion1},
      {"2 negative inner determinant", criterion2},
      {"3 example 3 reproduction", criterion3},
      {"4 unconditional theorem suite", criterion4},
      {"5 equality iff-conditions", criterion5},
      {"6 determinant oracle equivalence", criterion6},
      {"7 proof ingredients", criterion7},
      {"8 fuzz determinism", criterion8},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o{false, ""};
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
