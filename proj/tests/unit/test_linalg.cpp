#include "generators.hpp"
#include "wildfront/linalg.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace wildfront;

TEST(SpdMatrix3, RejectsIndefiniteAndAsymmetric) {
  Mat3 m = Mat3::Identity();
  m(2, 2) = -1.0;
  try {
    SpdMatrix3 bad(m);
    FAIL() << "accepted an indefinite matrix";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonSpd);
  }
  Mat3 a = Mat3::Identity();
  a(0, 1) = 0.5;
  EXPECT_THROW(SpdMatrix3{a}, Error);
}

TEST(SpdMatrix3, InverseSqrtMapsUnitSphereToHSphere) {
  test_support::Gen gen(11);
  for (int i = 0; i < 200; ++i) {
    const SpdMatrix3 h = gen.spd();
    const Mat3 s = h.inverse_sqrt();
    const Vec3 x = gen.unit();
    EXPECT_NEAR(h.norm(s * x), 1.0, 1e-10);
    EXPECT_LT((s * s * h.matrix() - Mat3::Identity()).norm(), 1e-9);
  }
}

TEST(SpdMatrix3, DiagonalInverseSqrtIsExact) {
  const SpdMatrix3 h = SpdMatrix3::diagonal(4.0, 1.0, 0.25);
  const Mat3 s = h.inverse_sqrt();
  EXPECT_EQ(s(0, 0), 0.5);
  EXPECT_EQ(s(1, 1), 1.0);
  EXPECT_EQ(s(2, 2), 2.0);
}

TEST(HOrthonormalComplement, IsOrthonormalInH) {
  test_support::Gen gen(12);
  for (int i = 0; i < 200; ++i) {
    const SpdMatrix3 h = gen.spd();
    const Vec3 n = gen.vec();
    const auto [e1, e2] = h_orthonormal_complement(h, n);
    EXPECT_NEAR(h.norm(e1), 1.0, 1e-10);
    EXPECT_NEAR(h.norm(e2), 1.0, 1e-10);
    EXPECT_NEAR(h.inner(e1, e2), 0.0, 1e-10);
    EXPECT_NEAR(h.inner(e1, n) / h.norm(n), 0.0, 1e-10);
    EXPECT_NEAR(h.inner(e2, n) / h.norm(n), 0.0, 1e-10);
  }
}

TEST(CosSinTurn, ExactAtQuarterTurns) {
  for (long n : {4L, 8L, 64L}) {
    for (long k = 0; k <= 2 * n; k += n / 4) {
      const auto [c, s] = cos_sin_turn(k, n);
      const long q = (k / (n / 4)) % 4;
      const double ec[4] = {1, 0, -1, 0}, es[4] = {0, 1, 0, -1};
      EXPECT_EQ(c, ec[q]);
      EXPECT_EQ(s, es[q]);
    }
  }
  const auto [c, s] = cos_sin_turn(1, 12);
  EXPECT_NEAR(c, std::cos(std::numbers::pi / 6), 1e-15);
  EXPECT_NEAR(s, 0.5, 1e-15);
}

TEST(ParseError, CarriesLocation) {
  const ParseError e("bad token", 3, 7);
  EXPECT_EQ(e.line(), 3);
  EXPECT_EQ(e.column(), 7);
  EXPECT_EQ(e.code(), ErrorCode::ParseError);
}
