#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "detineq/complex_matrix.hpp"
#include "detineq/structure.hpp"

namespace detineq {

enum class Family {
  integer_uniform,
  gaussian,
  symmetric,
  normal_via_unitary_conjugation,
  upper_triangular,
  block_triangular,
};

std::string_view to_string(Family f);
std::optional<Family> family_from_string(std::string_view name);
const std::vector<Family>& all_families();

struct GeneratorSpec {
  Family family = Family::integer_uniform;
  std::size_t n = 4;
  std::size_t r = 2;
  std::size_t m = 2;
  // Inclusive integer range for integer_uniform.
  long long entry_lo = -20;
  long long entry_hi = 26;
  // Standard deviation of each real and imaginary part for the continuous families.
  double scale = 1.0;
  // Multiplies the Y blocks and the strict upper part of upper_triangular draws.
  double offdiag_scale = 1.0;
  // Gaussian noise of this size is added to every square draw and every X, Z block.
  double perturbation = 0.0;
  std::uint64_t seed = 0;

  // Throws ArgumentError.
  void validate() const;
};

nlohmann::json generator_spec_to_json(const GeneratorSpec& spec);

// Everything a single trial may need: m square n x n draws of the family and m
// block upper-triangular draws whose diagonal blocks carry the family's
// structure.
struct Instance {
  std::vector<ComplexMatrix> squares;
  std::vector<BlockUpperTriangular> blocks;
};

// Pure function of (spec, trial_index).
Instance generate(const GeneratorSpec& spec, std::uint64_t trial_index);

// SplitMix64 finalizer, exposed for tests.
std::uint64_t mix64(std::uint64_t x);

}  // namespace detineq
