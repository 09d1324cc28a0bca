#include "detineq/generator.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>

#include "detineq/errors.hpp"
#include "detineq/spectral.hpp"

namespace detineq {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 6> kFamilies{{
    {Family::integer_uniform, "integer_uniform"},
    {Family::gaussian, "gaussian"},
    {Family::symmetric, "symmetric"},
    {Family::normal_via_unitary_conjugation, "normal_via_unitary_conjugation"},
    {Family::upper_triangular, "upper_triangular"},
    {Family::block_triangular, "block_triangular"},
}};

// The standard distributions are implementation-defined, so sampling is
// spelled out here to keep witnesses portable.
class TrialRng {
 public:
  explicit TrialRng(std::uint64_t state) : engine_(state) {}

  // Uniform on (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  long long integer(long long lo, long long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<long long>(engine_());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return lo + static_cast<long long>(v % span);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

class Sampler {
 public:
  Sampler(const GeneratorSpec& spec, std::uint64_t trial)
      : spec_(spec), rng_(mix64(spec.seed ^ mix64(trial + 0x9e3779b97f4a7c15ULL))) {}

  ComplexMatrix gaussian(std::size_t rows, std::size_t cols, double scale) {
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        const double re = rng_.normal();
        m(i, j) = Complex(scale * re, scale * rng_.normal());
      }
    return m;
  }

  ComplexMatrix integers(std::size_t rows, std::size_t cols) {
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        m(i, j) = static_cast<double>(rng_.integer(spec_.entry_lo, spec_.entry_hi));
    return m;
  }

  // A square draw of the family, size k.
  ComplexMatrix square(std::size_t k) {
    ComplexMatrix out = draw(k);
    if (spec_.perturbation != 0.0) out += gaussian(k, k, spec_.perturbation);
    return out;
  }

  // The off-diagonal block of a block-triangular draw.
  ComplexMatrix coupling(std::size_t rows, std::size_t cols) {
    ComplexMatrix y = spec_.family == Family::integer_uniform ? integers(rows, cols)
                                                              : gaussian(rows, cols, spec_.scale);
    y *= spec_.offdiag_scale;
    return y;
  }

 private:
  ComplexMatrix draw(std::size_t k) {
    switch (spec_.family) {
      case Family::integer_uniform:
        return integers(k, k);
      case Family::gaussian:
      case Family::block_triangular:
        return gaussian(k, k, spec_.scale);
      case Family::symmetric: {
        const ComplexMatrix a = gaussian(k, k, spec_.scale);
        return 0.5 * (a + a.transpose());
      }
      case Family::normal_via_unitary_conjugation: {
        const ComplexMatrix u = polar_decompose(gaussian(k, k, 1.0)).unitary;
        const ComplexMatrix d = gaussian(1, k, spec_.scale);
        return u * ComplexMatrix::diagonal(d.entries()) * u.adjoint();
      }
      case Family::upper_triangular: {
        ComplexMatrix a = gaussian(k, k, spec_.scale).upper_triangle();
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = i + 1; j < k; ++j) a(i, j) *= spec_.offdiag_scale;
        return a;
      }
    }
    throw ArgumentError("generate: unknown family");
  }

  const GeneratorSpec& spec_;
  TrialRng rng_;
};

}  // namespace

std::string_view to_string(Family f) {
  for (const auto& [k, name] : kFamilies)
    if (k == f) return name;
  return "unknown";
}

std::optional<Family> family_from_string(std::string_view name) {
  for (const auto& [k, n] : kFamilies)
    if (n == name) return k;
  return std::nullopt;
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> f = [] {
    std::vector<Family> v;
    for (const auto& [k, _] : kFamilies) v.push_back(k);
    return v;
  }();
  return f;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void GeneratorSpec::validate() const {
  if (n < 2) throw ArgumentError("generator: n must be at least 2");
  if (r == 0 || r >= n)
    throw ArgumentError("generator: partition r=" + std::to_string(r) + " must satisfy 0 < r < n");
  if (m == 0) throw ArgumentError("generator: family size m must be at least 1");
  if (entry_lo > entry_hi) throw ArgumentError("generator: empty integer range");
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw ArgumentError("generator: scale must be positive");
  if (!(offdiag_scale >= 0.0) || !std::isfinite(offdiag_scale))
    throw ArgumentError("generator: off-diagonal scale must be nonnegative");
  if (!(perturbation >= 0.0) || !std::isfinite(perturbation))
    throw ArgumentError("generator: perturbation must be nonnegative");
}

nlohmann::json generator_spec_to_json(const GeneratorSpec& spec) {
  return nlohmann::json{{"family", std::string(to_string(spec.family))},
                        {"n", spec.n},
                        {"r", spec.r},
                        {"m", spec.m},
                        {"entry_lo", spec.entry_lo},
                        {"entry_hi", spec.entry_hi},
                        {"scale", spec.scale},
                        {"offdiag_scale", spec.offdiag_scale},
                        {"perturbation", spec.perturbation},
                        {"seed", spec.seed}};
}

Instance generate(const GeneratorSpec& spec, std::uint64_t trial_index) {
  spec.validate();
  Sampler s(spec, trial_index);
  Instance out;
  for (std::size_t k = 0; k < spec.m; ++k) {
    if (spec.family == Family::block_triangular) {
      ComplexMatrix x = s.square(spec.r);
      ComplexMatrix y = s.coupling(spec.r, spec.n - spec.r);
      ComplexMatrix z = s.square(spec.n - spec.r);
      out.blocks.emplace_back(std::move(x), std::move(y), std::move(z));
      out.squares.push_back(out.blocks.back().assemble());
    } else {
      out.squares.push_back(s.square(spec.n));
      ComplexMatrix x = s.square(spec.r);
      ComplexMatrix y = s.coupling(spec.r, spec.n - spec.r);
      ComplexMatrix z = s.square(spec.n - spec.r);
      out.blocks.emplace_back(std::move(x), std::move(y), std::move(z));
    }
  }
  return out;
}

}  // namespace detineq
