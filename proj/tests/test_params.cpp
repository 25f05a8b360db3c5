#include <gtest/gtest.h>

#include <cmath>

#include "checks.hpp"
#include "hmporo/error.hpp"
#include "hmporo/params.hpp"

using namespace hmporo;

namespace {

TEST(DeriveLame, Examples) {
  const auto a = derive_lame(1e6, 0.0);
  EXPECT_EQ(a.lambda, 0.0);
  EXPECT_DOUBLE_EQ(a.mu, 5e5);
  const auto b = derive_lame(1e6, 0.499);
  EXPECT_NEAR(b.lambda, 1.664443e8, 1e2);
  EXPECT_NEAR(b.mu, 3.335557e5, 0.1);
  const auto c = derive_lame(1e6, 0.25);
  EXPECT_DOUBLE_EQ(c.lambda, 4e5);
  EXPECT_DOUBLE_EQ(c.mu, 4e5);
}

TEST(DeriveLame, RejectsIncompressibleLimit) {
  EXPECT_THROW(derive_lame(1e6, 0.5), ParameterError);
  EXPECT_THROW(derive_lame(1e6, 0.7), ParameterError);
}

TEST(DeriveKappas, Examples) {
  const auto z = derive_kappas(123.0, 1.0, 0.0);
  EXPECT_EQ(z.kappa3, 0.0);
  EXPECT_DOUBLE_EQ(z.kappa1, 1.0);
  EXPECT_DOUBLE_EQ(z.kappa2, 1.0 / 123.0);

  const double lambda = derive_lame(1e6, 0.499).lambda;
  const auto t1 = derive_kappas(lambda, 1.0, 1e3);
  EXPECT_NEAR(t1.kappa1, 0.99999399, 1e-8);
  EXPECT_NEAR(t1.kappa2, 6.00804e-9, 1e-13);
  EXPECT_NEAR(t1.kappa3, 999.99399, 1e-5);
  const auto t2 = derive_kappas(lambda, 1.0, 2.0);
  EXPECT_NEAR(t2.kappa1, 0.999999988, 1e-9);
  EXPECT_NEAR(t2.kappa2, 6.0080e-9, 1e-12);
  EXPECT_NEAR(t2.kappa3, 1.999999976, 1e-9);
}

TEST(DeriveKappas, IdentitiesOnRandomSamples) { EXPECT_LE(oracle::kappa_identity_error(2000, 11u), 1e-13); }

TEST(DeriveKappas, BoundedAsLambdaGrows) {
  const double alpha = 0.8, c0 = 3.0;
  const auto k = derive_kappas(1e15, alpha, c0);
  EXPECT_NEAR(k.kappa1, 1.0 / alpha, 1e-12);
  EXPECT_NEAR(k.kappa3, c0 / (alpha * alpha), 1e-12);  // = c0 kappa1 / alpha
  EXPECT_GT(k.kappa3, 0.0);
}

TEST(DeriveKappas, RejectsInvalidInputs) {
  EXPECT_THROW(derive_kappas(0.0, 1.0, 1.0), ParameterError);
  EXPECT_THROW(derive_kappas(1.0, 0.0, 1.0), ParameterError);
  EXPECT_THROW(derive_kappas(1.0, 1.0, -1.0), ParameterError);
}

TEST(XiEta, Examples) {
  PhysicalParams p;
  p.c0 = 2.0;
  const auto c = derive_coeffs(p);
  const auto zero = to_xi_eta(0.0, 0.0, c);
  EXPECT_EQ(zero.xi, 0.0);
  EXPECT_EQ(zero.eta, 0.0);
  const auto rt = to_xi_eta(2.0, 3.0, c);
  const auto back = from_xi_eta(rt.xi, rt.eta, c);
  EXPECT_NEAR(back.p, 2.0, 2e-12);
  EXPECT_NEAR(back.q, 3.0, 3e-12);
  // Second manufactured case at (1, 1, 1): p = 2, div u = 4.
  const auto e = to_xi_eta(2.0, 4.0, c);
  EXPECT_DOUBLE_EQ(e.xi, 2.0 * c.alpha - 4.0 / c.lambda);
  EXPECT_DOUBLE_EQ(e.eta, 2.0 * c.c0 + 4.0 * c.alpha);
}

TEST(XiEta, RoundtripsBothWays) { EXPECT_LE(oracle::roundtrip_error(1000, 3u), 1e-13); }

TEST(PhysicalParams, Validation) {
  PhysicalParams p;
  EXPECT_NO_THROW(p.validate());
  for (auto mutate : {+[](PhysicalParams& q) { q.E = 0; }, +[](PhysicalParams& q) { q.nu = -0.1; },
                      +[](PhysicalParams& q) { q.nu = 0.5; }, +[](PhysicalParams& q) { q.alpha = 0; },
                      +[](PhysicalParams& q) { q.c0 = -1; }, +[](PhysicalParams& q) { q.K = 0; },
                      +[](PhysicalParams& q) { q.mu_f = 0; }}) {
    PhysicalParams q;
    mutate(q);
    EXPECT_THROW(q.validate(), ParameterError);
  }
  PhysicalParams zero_nu;
  zero_nu.nu = 0.0;
  EXPECT_NO_THROW(zero_nu.validate());
  EXPECT_THROW(derive_coeffs(zero_nu), ParameterError);
}

}  // namespace
