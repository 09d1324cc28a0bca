#include <gtest/gtest.h>

#include <cmath>

#include "detineq/determinant.hpp"
#include "detineq/eigen.hpp"
#include "detineq/errors.hpp"
#include "detineq/matrix_io.hpp"
#include "detineq/spectral.hpp"
#include "detineq/structure.hpp"
#include "test_support.hpp"

using namespace detineq;
using namespace testing_support;

TEST(AbsMatrix, IdentityAndNilpotent) {
  EXPECT_LT(max_abs_diff(abs_matrix(ComplexMatrix::identity(3)), ComplexMatrix::identity(3)), 1e-15);
  // X*X = diag(0, 4).
  EXPECT_LT(max_abs_diff(abs_matrix(ComplexMatrix({{0, 2}, {0, 0}})), ComplexMatrix({{0, 0}, {0, 2}})),
            1e-15);
}

TEST(AbsMatrix, IdempotentOnPsd) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const ComplexMatrix b = random_complex(rng, 4, 4);
    const ComplexMatrix p = gram(b);
    EXPECT_LT(frobenius_norm(abs_matrix(p) - p), 1e-10 * frobenius_norm(p));
  }
}

TEST(AbsMatrix, SquaresToGram) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 8;
    ComplexMatrix a = random_complex(rng, n, n, 1.0 + t % 5);
    if (t % 5 == 0 && n > 1) a.set_block(0, 0, ComplexMatrix::zeros(n, 1));
    const ComplexMatrix p = abs_matrix(a);
    const ComplexMatrix g = gram(a);
    EXPECT_TRUE(is_psd(p));
    EXPECT_LE(frobenius_norm(p * p - g), 1e-9 * frobenius_norm(g));
  }
}

TEST(MatrixPowerPsd, Examples) {
  std::mt19937_64 rng(4);
  const ComplexMatrix p = gram(random_complex(rng, 3, 3));
  EXPECT_LT(frobenius_norm(matrix_power_psd(p, 1.0) - p), 1e-12 * frobenius_norm(p));
  EXPECT_LT(max_abs_diff(matrix_power_psd(ComplexMatrix({{4, 0}, {0, 9}}), 0.5),
                         ComplexMatrix({{2, 0}, {0, 3}})),
            1e-14);
  // |T|^2 = T*T = [[1,1],[1,2]] for T = [[1,1],[0,1]].
  const ComplexMatrix t{{1, 1}, {0, 1}};
  EXPECT_LT(max_abs_diff(matrix_power_psd(abs_matrix(t), 2.0), ComplexMatrix({{1, 1}, {1, 2}})), 1e-13);
  EXPECT_LT(max_abs_diff(matrix_power_psd(p, 0.0), ComplexMatrix::identity(3)), 1e-12);
}

TEST(MatrixPowerPsd, RejectsIndefiniteAndNegativeExponent) {
  EXPECT_THROW(matrix_power_psd(ComplexMatrix({{1, 0}, {0, -1}}), 2.0), NotPsdError);
  EXPECT_THROW(matrix_power_psd(ComplexMatrix::identity(2), -1.0), ArgumentError);
  EXPECT_THROW(matrix_power_psd(ComplexMatrix({{1, 1}, {0, 1}}), 1.0), NotHermitianError);
  // A clamp-sized negative eigenvalue is accepted and treated as zero.
  const ComplexMatrix near{{1, 0}, {0, -1e-14}};
  EXPECT_DOUBLE_EQ(matrix_power_psd(near, 0.5)(1, 1).real(), 0.0);
}

TEST(Polar, UnitaryInput) {
  const double c = std::cos(0.3), s = std::sin(0.3);
  const ComplexMatrix u{{c, -s}, {s, c}};
  const PolarFactors f = polar_decompose(Complex(0, 1) * u);
  EXPECT_LT(max_abs_diff(f.unitary, Complex(0, 1) * u), 1e-14);
  EXPECT_LT(max_abs_diff(f.positive, ComplexMatrix::identity(2)), 1e-14);
}

TEST(Polar, SingularByHand) {
  const ComplexMatrix a{{0, 2}, {0, 0}};
  const PolarFactors f = polar_decompose(a);
  EXPECT_LT(max_abs_diff(f.unitary, ComplexMatrix({{0, 1}, {1, 0}})), 1e-15);
  EXPECT_LT(max_abs_diff(f.positive, ComplexMatrix({{0, 0}, {0, 2}})), 1e-15);
  EXPECT_LT(max_abs_diff(f.unitary * f.positive, a), 1e-15);
}

TEST(Polar, Invariants) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 7;
    ComplexMatrix a = random_complex(rng, n, n);
    if (t % 3 == 0) a = gram(a);                                    // Hermitian PSD
    if (t % 7 == 0 && n > 2) a.set_block(0, 1, ComplexMatrix::zeros(n, 2));  // singular
    const PolarFactors f = polar_decompose(a);
    const double norm = frobenius_norm(a);
    EXPECT_LE(frobenius_norm(f.unitary * f.positive - a), 1e-9 * norm);
    EXPECT_LE(frobenius_norm(gram(f.unitary) - ComplexMatrix::identity(n)), 1e-10);
    EXPECT_TRUE(is_psd(f.positive));
    EXPECT_LE(frobenius_norm(f.positive - abs_matrix(a)), 1e-9 * (1 + norm));
  }
  EXPECT_THROW(polar_decompose(ComplexMatrix(2, 3)), DimensionError);
}

TEST(SchurComplement, ByHand) {
  const ComplexMatrix a{{2, 1}, {1, 1}};
  const ComplexMatrix s = schur_complement(a, 1);
  EXPECT_NEAR(std::abs(s(0, 0) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(det(a).value().real(), 2.0 * 0.5, 1e-14);
}

TEST(SchurComplement, BlockDiagonalAndIdentity) {
  ComplexMatrix a = ComplexMatrix::identity(5);
  for (std::size_t r = 1; r < 5; ++r)
    EXPECT_EQ(schur_complement(a, r), ComplexMatrix::identity(5 - r));
  std::mt19937_64 rng(6);
  ComplexMatrix bd(4, 4);
  bd.set_block(0, 0, random_complex(rng, 2, 2));
  const ComplexMatrix a22 = random_complex(rng, 2, 2);
  bd.set_block(2, 2, a22);
  EXPECT_EQ(schur_complement(bd, 2), a22);
}

TEST(SchurComplement, DeterminantIdentity) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + t % 7;
    const std::size_t r = 1 + t % (n - 1);
    const ComplexMatrix a = random_complex(rng, n, n);
    const SignedLogDet lhs = det(a);
    const SignedLogDet rhs = det(a.block(0, 0, r, r)) * det(schur_complement(a, r));
    EXPECT_NEAR(lhs.log_magnitude(), rhs.log_magnitude(), 1e-8 * std::max(1.0, std::abs(lhs.log_magnitude())));
    EXPECT_NEAR(std::abs(lhs.phase() - rhs.phase()), 0.0, 1e-8);
  }
}

TEST(SchurComplement, SingularLeadingBlockRejectedWithConditionEstimate) {
  const ComplexMatrix a{{1, 2, 0}, {2, 4, 1}, {0, 1, 1}};
  try {
    schur_complement(a, 2);
    FAIL() << "expected SingularBlockError";
  } catch (const SingularBlockError& e) {
    EXPECT_LT(e.condition_estimate(), 1e-13);
  }
  EXPECT_THROW(schur_complement(a, 0), ArgumentError);
  EXPECT_THROW(schur_complement(a, 3), ArgumentError);
}

TEST(Predicates, Examples) {
  std::mt19937_64 rng(8);
  const ComplexMatrix h = random_hermitian(rng, 4);
  EXPECT_TRUE(is_normal(h));
  EXPECT_TRUE(is_hermitian(h));
  const auto j = predicates(ComplexMatrix({{1, 2}, {0, 1}}));
  EXPECT_FALSE(j.is_normal);
  EXPECT_FALSE(j.is_symmetric);
  EXPECT_TRUE(j.is_upper_triangular);
  EXPECT_TRUE(predicates(ComplexMatrix({{1, 2}, {2, 3}})).is_symmetric);
  const auto z = predicates(ComplexMatrix::zeros(3, 3));
  EXPECT_TRUE(z.is_symmetric && z.is_normal && z.is_psd && z.is_hermitian);
  EXPECT_TRUE(is_psd(ComplexMatrix({{2, 1}, {1, 1}})));
  EXPECT_FALSE(is_psd(ComplexMatrix({{1, 2}, {2, 1}})));
  // Complex symmetric is not Hermitian.
  const ComplexMatrix cs{{Complex(0, 1), 2}, {2, 1}};
  EXPECT_TRUE(is_symmetric(cs));
  EXPECT_FALSE(is_hermitian(cs));
}

TEST(BlockUpperTriangular, ConstructionAndAssembly) {
  const ComplexMatrix t{{1, 2, 3}, {0, 4, 5}, {0, 6, 7}};
  const auto b = BlockUpperTriangular::from_matrix(t, 1);
  EXPECT_EQ(b.n(), 3u);
  EXPECT_EQ(b.r(), 1u);
  EXPECT_EQ(b.x(), ComplexMatrix({{1}}));
  EXPECT_EQ(b.y(), ComplexMatrix({{2, 3}}));
  EXPECT_EQ(b.z(), ComplexMatrix({{4, 5}, {6, 7}}));
  EXPECT_EQ(b.assemble(), t);
  EXPECT_THROW(BlockUpperTriangular::from_matrix(t, 2), ArgumentError);  // t(2,1) = 6
  EXPECT_THROW(BlockUpperTriangular::from_matrix(t, 0), ArgumentError);
  EXPECT_THROW(BlockUpperTriangular(ComplexMatrix(1, 1), ComplexMatrix(1, 1), ComplexMatrix(2, 2)),
               DimensionError);
}

TEST(BlockFamily, RejectsMixedPartitions) {
  const BlockUpperTriangular a(ComplexMatrix(1, 1), ComplexMatrix(1, 2), ComplexMatrix(2, 2));
  const BlockUpperTriangular b(ComplexMatrix(2, 2), ComplexMatrix(2, 1), ComplexMatrix(1, 1));
  EXPECT_NO_THROW(BlockFamily({a, a}));
  EXPECT_THROW(BlockFamily({a, b}), ArgumentError);
  EXPECT_THROW(BlockFamily({}), ArgumentError);
}

TEST(MatrixIo, RoundTripIsExact) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix a = random_complex(rng, 1 + t % 4, 1 + t % 3, std::pow(10.0, t - 10));
    EXPECT_EQ(parse_matrix(format_matrix(a)), a);
  }
}

TEST(MatrixIo, ParsesDocument) {
  const auto m = parse_matrix(R"({"rows": 1, "cols": 2, "entries": [[1, 0], [0.5, -2]]})");
  EXPECT_EQ(m, ComplexMatrix({{1, Complex(0.5, -2)}}));
}

TEST(MatrixIo, ErrorsCarryLocation) {
  auto location_of = [](const char* text) {
    try {
      parse_matrix(text);
    } catch (const FormatError& e) {
      return e.location();
    }
    return std::string("no error");
  };
  EXPECT_NE(location_of(R"({"rows": 1, "cols": 1, "entries": [[1, 0]])").find("byte"), std::string::npos);
  EXPECT_EQ(location_of(R"({"rows": 1, "cols": 2, "entries": [[1, 0], [1]]})"), "$.entries[1]");
  EXPECT_EQ(location_of(R"({"rows": 1, "cols": 2, "entries": [[1, 0]]})"), "$.entries");
  EXPECT_EQ(location_of(R"({"rows": 0, "cols": 2, "entries": []})"), "$.rows");
  EXPECT_EQ(location_of(R"({"rows": 1, "cols": 1, "entries": [[1, 0]], "extra": 1})"), "$");
  EXPECT_EQ(location_of(R"([1, 2])"), "$");
}
