#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "detineq/complex_matrix.hpp"
#include "detineq/determinant.hpp"
#include "detineq/errors.hpp"
#include "test_support.hpp"

using namespace detineq;
using testing_support::random_complex;

namespace {
const Complex I1{0.0, 1.0};
}

TEST(ComplexMatrix, IdentityIsMultiplicativeUnit) {
  std::mt19937_64 rng(7);
  const ComplexMatrix m = random_complex(rng, 2, 3);
  EXPECT_EQ(ComplexMatrix::identity(2) * m, m);
  EXPECT_EQ(m * ComplexMatrix::identity(3), m);
}

TEST(ComplexMatrix, AdjointOfImaginaryUnit) {
  const ComplexMatrix a{{I1}};
  EXPECT_EQ(a.adjoint(), ComplexMatrix({{-I1}}));
}

TEST(ComplexMatrix, HandMultiplication) {
  const ComplexMatrix a{{1, 2}, {0, 1}};
  EXPECT_EQ(a * a, ComplexMatrix({{1, 4}, {0, 1}}));
}

TEST(ComplexMatrix, AdjointIsAnInvolutionBitwise) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const ComplexMatrix a = random_complex(rng, 1 + t % 5, 1 + (t / 5) % 4);
    EXPECT_EQ(a.adjoint().adjoint(), a);
    EXPECT_EQ(a.transpose().transpose(), a);
    EXPECT_EQ(a.conjugate().transpose(), a.adjoint());
  }
}

TEST(ComplexMatrix, DimensionMismatchReportsBothShapes) {
  const ComplexMatrix a(2, 3), b(2, 3);
  try {
    (void)(a * b);
    FAIL() << "expected DimensionError";
  } catch (const DimensionError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("2x3"), std::string::npos);
    EXPECT_NE(msg.find("multiply"), std::string::npos);
  }
  EXPECT_THROW(a + ComplexMatrix(3, 2), DimensionError);
}

TEST(ComplexMatrix, RejectsNonFiniteEntries) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(ComplexMatrix(1, 1, {Complex(nan, 0.0)}), ArgumentError);
  EXPECT_THROW(ComplexMatrix(1, 2, {Complex(1.0, 0.0)}), ArgumentError);
  EXPECT_THROW(ComplexMatrix(0, 2), DimensionError);
  const ComplexMatrix huge{{1e300}};
  EXPECT_THROW((void)(huge * huge), ArgumentError);
}

TEST(ComplexMatrix, FrobeniusNorm) {
  EXPECT_DOUBLE_EQ(frobenius_norm(ComplexMatrix::identity(2)), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(frobenius_norm(ComplexMatrix({{3, 4}})), 5.0);
  EXPECT_DOUBLE_EQ(frobenius_norm(ComplexMatrix({{I1, 0}, {0, 2}})), std::sqrt(5.0));
}

TEST(ComplexMatrix, FrobeniusAgreesWithTraceOfGram) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const ComplexMatrix a = random_complex(rng, 1 + t % 6, 1 + t % 4, 1.0 + t);
    const double via_trace = std::sqrt(gram(a).trace().real());
    EXPECT_NEAR(frobenius_norm(a), via_trace, 1e-12 * via_trace);
  }
}

TEST(ComplexMatrix, BlocksAndStacks) {
  const ComplexMatrix a{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  EXPECT_EQ(a.block(1, 1, 2, 2), ComplexMatrix({{5, 6}, {8, 9}}));
  EXPECT_EQ(hstack(a.block(0, 0, 3, 1), a.block(0, 1, 3, 2)), a);
  EXPECT_EQ(vstack(a.block(0, 0, 1, 3), a.block(1, 0, 2, 3)), a);
  EXPECT_EQ(a.upper_triangle(), ComplexMatrix({{1, 2, 3}, {0, 5, 6}, {0, 0, 9}}));
  EXPECT_THROW(a.block(2, 2, 2, 1), DimensionError);
}
