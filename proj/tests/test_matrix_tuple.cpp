#include "isotuple/generators.hpp"
#include "isotuple/matrix.hpp"
#include "isotuple/tuple.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <limits>

using namespace isotuple;

namespace {
const Complex I1{0.0, 1.0};
}

TEST(Matrix, KronAndVecAgreeWithOracle) {
  oracle::Source src(1);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = src.gaussian(3), b = src.gaussian(2), x = src.gaussian(3);
    EXPECT_LT(oracle::max_abs(kron(a, b) - oracle::kron(a, b)), 1e-15);
    EXPECT_LT(oracle::max_abs(vec(x) - oracle::vec(x)), 0.0 + 1e-300);
    EXPECT_EQ(unvec(vec(x), 3), x);
    // vec(A X B) = (B^T (x) A) vec(X)
    const CMatrix c = src.gaussian(3);
    EXPECT_LT((vec(a * x * c) - kron(c.transpose(), a) * vec(x)).norm(), 1e-12);
  }
}

TEST(Matrix, PowerAdjointConj) {
  CMatrix t(2, 2);
  t << 1.0, 1.0, 0.0, 1.0;
  CMatrix t5(2, 2);
  t5 << 1.0, 5.0, 0.0, 1.0;
  EXPECT_EQ(power(t, 5), t5);
  EXPECT_EQ(power(t, 0), identity(2));
  CMatrix z(1, 1);
  z << Complex(1.0, 2.0);
  EXPECT_EQ(adjoint(z)(0, 0), Complex(1.0, -2.0));
  EXPECT_EQ(conj(z)(0, 0), Complex(1.0, -2.0));
}

TEST(Matrix, ArgumentChecks) {
  EXPECT_THROW(require_square(CMatrix(2, 3), "t"), std::invalid_argument);
  CMatrix bad = identity(2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(require_finite(bad, "t"), std::invalid_argument);
  EXPECT_THROW(add(identity(2), identity(3)), std::invalid_argument);
  EXPECT_THROW(mul(identity(2), identity(3)), std::invalid_argument);
}

TEST(Matrix, InverseAndSingularity) {
  CMatrix a(2, 2);
  a << 2.0, 1.0, 0.0, 1.0;
  EXPECT_LT(oracle::max_abs(inverse(a) * a - identity(2)), 1e-14);
  CMatrix s(2, 2);
  s << 1.0, 2.0, 2.0, 4.0;
  EXPECT_THROW(inverse(s), SingularMatrixError);
  EXPECT_TRUE(std::isinf(condition_number(zero(2))) || condition_number(zero(2)) > 1e300);
}

TEST(Matrix, IsZeroThreshold) {
  const Tolerance tol(1e-10, 1e-8);
  CMatrix m = zero(2);
  m(0, 0) = 5e-11;
  EXPECT_TRUE(is_zero(m, tol, 0.0));
  m(0, 0) = 5e-9;
  EXPECT_FALSE(is_zero(m, tol, 0.0));
  EXPECT_TRUE(is_zero(m, tol, 1.0));
  EXPECT_DOUBLE_EQ(tol.threshold(2.0), 1e-10 + 2e-8);
}

TEST(Tuple, ConstructionRules) {
  EXPECT_THROW(OperatorTuple(std::vector<CMatrix>{}), std::invalid_argument);
  EXPECT_THROW(OperatorTuple({identity(2), identity(3)}), std::invalid_argument);
  const OperatorTuple t({identity(2), 2.0 * identity(2)});
  EXPECT_EQ(t.sum(), 3.0 * identity(2));
  EXPECT_NEAR(t.norm_sum(), 3.0 * std::sqrt(2.0), 1e-14);
}

TEST(Tuple, CommutationChecks) {
  oracle::Source src(2);
  const OperatorTuple c = src.commuting(3, 3);
  EXPECT_TRUE(commutes_within(c));
  EXPECT_LT(commutator_residual(c), 1e-12);
  const OperatorTuple nc({src.gaussian(3), src.gaussian(3)});
  EXPECT_FALSE(commutes_within(nc));
  EXPECT_FALSE(commutes_cross(c, nc));
}

TEST(Tuple, ProductAndSumOrdering) {
  oracle::Source src(3);
  const OperatorTuple s({src.gaussian(2), src.gaussian(2)});
  const OperatorTuple a({src.gaussian(2), src.gaussian(2), src.gaussian(2)});
  const OperatorTuple p = product_tuple(s, a);
  ASSERT_EQ(p.size(), 6u);
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(p[j * 3 + i], s[j] * a[i]);
  const OperatorTuple n({src.gaussian(2), src.gaussian(2), src.gaussian(2)});
  const OperatorTuple sum = sum_tuple(a, n);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(sum[i], a[i] + n[i]);
  EXPECT_THROW(sum_tuple(a, s), std::invalid_argument);
}

TEST(Tuple, PowerConventions) {
  oracle::Source src(4);
  const OperatorTuple a({src.gaussian(2), src.gaussian(2)});
  const OperatorTuple w = power_tuple(a, 2, PowerConvention::word);
  ASSERT_EQ(w.size(), 4u);
  EXPECT_EQ(w[1], a[0] * a[1]);
  EXPECT_EQ(w[2], a[1] * a[0]);
  const OperatorTuple c = power_tuple(a, 3, PowerConvention::componentwise);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_LT(oracle::max_abs(c[1] - a[1] * a[1] * a[1]), 1e-14);
  EXPECT_THROW(power_tuple(a, 0), std::invalid_argument);
}

TEST(Tuple, InverseAdjointConjTensor) {
  CMatrix j(2, 2);
  j << 2.0, 1.0, 0.0, 2.0;
  const OperatorTuple t({j, I1 * identity(2)});
  const OperatorTuple inv = inverse_tuple(t);
  EXPECT_LT(oracle::max_abs(inv[0] * j - identity(2)), 1e-14);
  EXPECT_EQ(adjoint_tuple(t)[1], -I1 * identity(2));
  EXPECT_EQ(conj_tuple(t)[1], -I1 * identity(2));
  const OperatorTuple tt = tensor_tuple(t, OperatorTuple({identity(3)}));
  ASSERT_EQ(tt.size(), 2u);
  EXPECT_EQ(tt.dim(), 6);
  EXPECT_LT(oracle::max_abs(tt[0] - oracle::kron(j, identity(3))), 1e-15);
  EXPECT_THROW(inverse_tuple(OperatorTuple({zero(2)})), SingularMatrixError);
}

TEST(Tuple, ScalarTupleAndMixing) {
  const OperatorTuple s = scalar_tuple(Complex(2.0, 0.0), 3, 2);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[2], 2.0 * identity(2));
  oracle::Source src(5);
  const OperatorTuple t({src.gaussian(2), src.gaussian(2)});
  CMatrix u(2, 2);
  u << 1.0, 1.0, 1.0, -1.0;
  u /= std::sqrt(2.0);
  const OperatorTuple m = mix_by_unitary(u, t);
  EXPECT_LT(oracle::max_abs(m[0] - (t[0] + t[1]) / std::sqrt(2.0)), 1e-14);
  EXPECT_THROW(mix_by_unitary(2.0 * u, t), std::invalid_argument);
}

TEST(Tuple, MonomialAndNilpotencyOrder) {
  const CMatrix n3 = shift(3);
  const OperatorTuple n({n3, n3 * n3});
  EXPECT_EQ(monomial(n, {1, 1}), n3 * n3 * n3);
  EXPECT_EQ(nilpotency_order(n, 8), std::optional<unsigned>(3));
  EXPECT_EQ(nilpotency_order(OperatorTuple({zero(2)}), 4), std::optional<unsigned>(1));
  EXPECT_EQ(nilpotency_order(OperatorTuple({identity(2)}), 6), std::nullopt);
  oracle::Source src(6);
  const OperatorTuple nc({shift(3), shift(3).transpose()});
  EXPECT_THROW(nilpotency_order(nc, 5), std::invalid_argument);
}
