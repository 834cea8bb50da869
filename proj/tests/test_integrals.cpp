#include <gtest/gtest.h>

#include "hopfknot/integrals.hpp"
#include "hopfknot/zoo.hpp"

using namespace hopfknot;

namespace {

const Field* Q = Field::rationals();

// Independent check of the right-integral identity lambda(x_(1)) x_(2) = lambda(x) 1 via the tensor API.
bool is_right_integral(const HopfAlgebra& H, const Vector& lambda) {
  for (Index i = 0; i < H.dim(); ++i) {
    TensorElement t = H.comultiply(H.basis(i));
    Vector acc = H.zero_vector();
    for (const auto& [key, c] : t.terms) acc[key[1]] += c * lambda[key[0]];
    Vector rhs = H.unit_vector();
    for (auto& x : rhs) x = x * lambda[i];
    if (acc != rhs) return false;
  }
  return true;
}

bool is_left_cointegral(const HopfAlgebra& H, const Vector& Lambda) {
  for (Index i = 0; i < H.dim(); ++i) {
    AlgebraElement p = H.multiply(H.basis(i), H.element(Lambda));
    Vector rhs = Lambda;
    for (auto& x : rhs) x = x * H.counit_vector()[i];
    if (p.coeffs != rhs) return false;
  }
  return true;
}

// Whether u = t v for some scalar t.
bool proportional(const Vector& u, const Vector& v) {
  std::optional<Scalar> t;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (v[i].is_zero() != u[i].is_zero()) return false;
    if (v[i].is_zero()) continue;
    Scalar r = u[i] / v[i];
    if (t && *t != r) return false;
    t = r;
  }
  return t.has_value();
}

}  // namespace

TEST(Integrals, GroupAlgebra) {
  for (const auto& G : {cyclic_group(2), symmetric_group_s3(), trivial_group()}) {
    HopfAlgebra H(group_algebra(G, Q));
    IntegralData I = compute_integrals(H);
    EXPECT_TRUE(is_right_integral(H, I.lambda));
    EXPECT_TRUE(is_left_cointegral(H, I.Lambda));
    EXPECT_TRUE(H.pair(I.lambda, I.Lambda).is_one());
    EXPECT_TRUE(proportional(I.lambda, H.unit_vector()));
    EXPECT_TRUE(proportional(I.Lambda, H.counit_vector()));
    EXPECT_EQ(I.alpha, H.counit_vector());
    EXPECT_EQ(I.a, H.unit_vector());
    EXPECT_TRUE(verify_spherical(H, I));
    Vector mu = symmetrized_integral(H, I.lambda, I);
    EXPECT_EQ(mu, I.lambda);
  }
}

TEST(Integrals, Z2Normalization) {
  HopfAlgebra H(group_algebra(cyclic_group(2), Q));
  Vector lambda = {Scalar(Q, 1L), Scalar(Q, 0L)};
  Vector Lambda = {Scalar(Q, 1L), Scalar(Q, 1L)};
  auto [l1, L1] = normalize_pair(H, lambda, Lambda);
  EXPECT_EQ(L1, Lambda);
  Vector twice = {Scalar(Q, 2L), Scalar(Q, 2L)};
  auto [l2, L2] = normalize_pair(H, lambda, twice);
  EXPECT_EQ(L2, Lambda);
  EXPECT_THROW(normalize_pair(H, lambda, {Scalar(Q, 0L), Scalar(Q, 1L)}), Error);
  IntegralData I = compute_integrals(H);
  Vector mu = symmetrized_integral(H, lambda, I);
  EXPECT_TRUE(H.pair(mu, H.unit_vector()).is_one());
}

TEST(Integrals, Sweedler) {
  HopfAlgebra H(sweedler_algebra(Q));
  IntegralData I = compute_integrals(H);
  EXPECT_TRUE(is_right_integral(H, I.lambda));
  EXPECT_TRUE(is_left_cointegral(H, I.Lambda));
  EXPECT_NE(I.alpha, H.counit_vector());
  EXPECT_FALSE(is_unimodular(H, I));
  EXPECT_FALSE(verify_spherical(H, I));
  EXPECT_TRUE(H.is_group_like(I.a));
  EXPECT_THROW(symmetrized_integral(H, I.lambda, I), Error);
}

TEST(Integrals, SmallQuantumGroupClosedForms) {
  for (int r : {2, 3}) {
    const Field* F = Field::cyclotomic(2 * r);
    for (long cv : {1L, 3L}) {
      Scalar c(F, cv);
      HopfAlgebra H(small_quantum_sl2(r, c));
      IntegralData I = compute_integrals(H);
      UqClosedForms cf = uq_integrals(r, c);
      EXPECT_TRUE(proportional(I.lambda, cf.lambda));
      EXPECT_TRUE(proportional(I.Lambda, cf.Lambda));
      EXPECT_TRUE(H.pair(cf.lambda, cf.Lambda).is_one());
      EXPECT_TRUE(is_right_integral(H, cf.lambda));
      EXPECT_TRUE(is_left_cointegral(H, cf.Lambda));
      EXPECT_TRUE(is_unimodular(H, I));
      // a = K^2
      EXPECT_EQ(I.a, H.mul(H.pivot_vector(), H.pivot_vector()));
      EXPECT_TRUE(verify_spherical(H, I));
      Vector mu = symmetrized_integral(H, cf.lambda, I);
      const std::size_t efIdx = static_cast<std::size_t>((r - 1) * r + (r - 1));
      for (std::size_t i = 0; i < H.dim(); ++i) {
        if (i == efIdx)
          EXPECT_EQ(mu[i], Scalar(F, static_cast<long>(r)) / c);
        else
          EXPECT_TRUE(mu[i].is_zero()) << i;
      }
    }
  }
}

TEST(Integrals, QuantumCharacterProperties) {
  HopfAlgebra H(small_quantum_sl2(2, Scalar::one(Q)));
  IntegralData I = compute_integrals(H);
  const std::size_t n = H.dim();
  for (Index i = 0; i < n; ++i) {
    Vector e = H.basis_vector(i);
    EXPECT_EQ(H.pair(I.lambda, H.antipode(e, 2)), I.lambda[i]);
    Vector g2e = H.mul(H.mul(H.pivot_vector(), H.pivot_vector()), e);
    EXPECT_EQ(H.pair(I.lambda, H.antipode(e, 1)), H.pair(I.lambda, g2e));
    for (Index j = 0; j < n; ++j) {
      Vector f = H.basis_vector(j);
      EXPECT_EQ(H.pair(I.lambda, H.mul(e, f)), H.pair(I.lambda, H.mul(H.antipode(f, 2), e)));
    }
  }
}

TEST(Integrals, TrivialQuasitriangular) {
  HopfAlgebra H(group_algebra(trivial_group(), Q));
  RMatrix R{{0, Scalar::one(Q)}};
  EXPECT_TRUE(verify_quasitriangular(H, R).all_passed());
  EXPECT_TRUE(ribbon_element(H, R)[0].is_one());
}
