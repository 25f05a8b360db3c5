#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "checks.hpp"
#include "hmporo/constitutive.hpp"
#include "hmporo/manufactured.hpp"

using namespace hmporo;

namespace {

const DerivedCoeffs& table_coeffs() {
  static const DerivedCoeffs c = derive_coeffs(ManufacturedCase::table_params(CaseId::test1));
  return c;
}

ConstitutiveLaw law_of(LawId id) { return ConstitutiveLaw(id, table_coeffs()); }

void expect_sym_near(SymMat2 a, SymMat2 b, double tol) {
  EXPECT_NEAR(a.e11, b.e11, tol);
  EXPECT_NEAR(a.e22, b.e22, tol);
  EXPECT_NEAR(a.e12, b.e12, tol);
}

TEST(DevScalar, Examples) {
  EXPECT_EQ(dev_scalar(SymMat2::identity()), 0.0);
  EXPECT_EQ(dev_scalar({1.0, -1.0, 0.0}), 2.0);
  EXPECT_DOUBLE_EQ(dev_scalar({0.3, 0.1, 0.2}), 0.5 * 0.04 + 2 * 0.04);
}

TEST(DevScalar, MatchesClosedFormOfFirstCase) {
  EXPECT_LE(oracle::test1_dev_mismatch(ManufacturedCase(CaseId::test1), 50, 7u), 1e-12);
}

TEST(DevScalar, Nonnegative) {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> unif(-5.0, 5.0);
  for (int i = 0; i < 10000; ++i) EXPECT_GE(dev_scalar({unif(rng), unif(rng), unif(rng)}), 0.0);
}

TEST(LameTilde, Examples) {
  const double lambda = table_coeffs().lambda, mu = table_coeffs().mu;
  const auto lin = law_of(LawId::linear).lame_tilde(3.7);
  EXPECT_DOUBLE_EQ(lin.mu_tilde, 2 * mu);
  EXPECT_NEAR(lin.lambda_tilde, lambda, 1e-7);
  for (LawId id : {LawId::test1, LawId::test2}) {
    const auto z = law_of(id).lame_tilde(0.0);
    EXPECT_DOUBLE_EQ(z.mu_tilde, mu);
    // lambda_tilde = kappa - mu_tilde / 2 cancels terms of size mu / 2.
    EXPECT_NEAR(z.lambda_tilde, 1.0 / lambda, 1e-15 * mu);
  }
  const double rho = 0.8;
  const auto t1 = law_of(LawId::test1).lame_tilde(rho);
  EXPECT_NEAR(t1.mu_tilde, mu / std::sqrt(1 + rho), 1e-9);
  EXPECT_NEAR(t1.lambda_tilde, 1 / lambda + mu / 2 - mu / 2 / std::sqrt(1 + rho), 1e-9);
}

TEST(Stress, Examples) {
  const double lambda = table_coeffs().lambda, mu = table_coeffs().mu;
  const auto lin = law_of(LawId::linear).stress(SymMat2::identity());
  EXPECT_NEAR(lin.e11, 2 * lambda + 2 * mu, 1e-6);
  EXPECT_NEAR(lin.e22, 2 * lambda + 2 * mu, 1e-6);
  EXPECT_EQ(lin.e12, 0.0);
  const double c = 0.37;
  const auto t1 = law_of(LawId::test1).stress(c * SymMat2::identity());
  EXPECT_NEAR(t1.e11, mu * c + 2 * c / lambda, 1e-9);
  EXPECT_NEAR(t1.e22, mu * c + 2 * c / lambda, 1e-9);
}

TEST(Stress, FirstCaseClosedForm) {
  const double lambda = table_coeffs().lambda, mu = table_coeffs().mu;
  const auto law = law_of(LawId::test1);
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const SymMat2 e{unif(rng), unif(rng), unif(rng)};
    const double rho = 0.5 * std::pow(e.e11 - e.e22, 2) + 2 * e.e12 * e.e12;
    const double g = 1 / std::sqrt(1 + rho);
    const double lt = 1 / lambda + mu / 2 - mu / 2 * g;
    const SymMat2 expected{mu * g * e.e11 + lt * e.trace(), mu * g * e.e22 + lt * e.trace(), mu * g * e.e12};
    expect_sym_near(law.stress(e), expected, 1e-12 * mu);
  }
}

TEST(NTensor, Examples) {
  const double lambda = table_coeffs().lambda, mu = table_coeffs().mu;
  const double c = -0.6;
  expect_sym_near(law_of(LawId::test1).n_tensor(c * SymMat2::identity()), mu * c * SymMat2::identity(), 1e-9);
  for (LawId id : {LawId::linear, LawId::test1, LawId::test2}) expect_sym_near(law_of(id).n_tensor({}), {}, 0.0);
  const SymMat2 e{0.2, -0.4, 0.1};
  const SymMat2 expected = 2 * mu * e + (lambda - 1 / lambda) * e.trace() * SymMat2::identity();
  expect_sym_near(law_of(LawId::linear).n_tensor(e), expected, 1e-6);
}

TEST(StoredEnergy, Examples) {
  const double lambda = table_coeffs().lambda, mu = table_coeffs().mu;
  EXPECT_DOUBLE_EQ(law_of(LawId::test1).stored_energy({}), mu);
  EXPECT_NEAR(law_of(LawId::linear).stored_energy(SymMat2::identity()), 2 * (lambda + mu), 1e-6);
}

TEST(StoredEnergy, GradientIsStress) {
  EXPECT_LE(oracle::energy_gradient_error(law_of(LawId::test1), 100, 1u), 1e-6);
  EXPECT_LE(oracle::energy_gradient_error(law_of(LawId::linear), 100, 2u), 1e-6);
}

TEST(Frozen, Examples) {
  const double lambda = table_coeffs().lambda, mu = table_coeffs().mu;
  for (LawId id : {LawId::test1, LawId::test2}) {
    const auto f = law_of(id).frozen({});
    EXPECT_DOUBLE_EQ(f.mu_tilde, mu);
    EXPECT_NEAR(f.shifted_lambda, 0.0, 1e-9);
  }
  for (SymMat2 e : {SymMat2{}, SymMat2{0.3, -0.2, 0.5}}) {
    const auto f = law_of(LawId::linear).frozen(e);
    EXPECT_DOUBLE_EQ(f.mu_tilde, 2 * mu);
    EXPECT_NEAR(f.shifted_lambda, lambda - 1 / lambda, 1e-6);
  }
  // The frozen coefficients reproduce N at the point they were frozen at.
  for (LawId id : {LawId::test1, LawId::test2}) {
    const SymMat2 e{0.3, -0.2, 0.5};
    const auto f = law_of(id).frozen(e);
    expect_sym_near(law_of(id).n_tensor(e), f.mu_tilde * e + f.shifted_lambda * e.trace() * SymMat2::identity(),
                    1e-9);
  }
}

TEST(Law, StructuralConditions) {
  for (LawId id : {LawId::test1, LawId::test2}) {
    const auto law = law_of(id);
    EXPECT_LT(law.mu() * law.phi_prime(0.0), law.kappa(0.0));
    for (double rho = 0.0; rho <= 1e3; rho = rho < 1 ? rho + 0.01 : rho * 1.1) {
      EXPECT_GT(law.mu() * law.phi_prime(rho), 0.0);
      // The second law has mu Phi' increasing and kappa decreasing in rho, so
      // mu Phi' < kappa holds for it only at rho = 0.
      if (id == LawId::test1) {
        EXPECT_LT(law.mu() * law.phi_prime(rho), law.kappa(rho)) << "rho " << rho;
      }
      const double h = 1e-5 * std::max(1.0, rho);
      const double phi2 = (law.phi_prime(rho + h) - law.phi_prime(std::max(0.0, rho - h))) / (rho + h - std::max(0.0, rho - h));
      EXPECT_LT(std::abs(rho * phi2), 1.0);
      EXPECT_GT(law.phi_prime(rho) + 2 * rho * phi2, 0.0);
    }
  }
}

class NSampling : public ::testing::TestWithParam<LawId> {};

TEST_P(NSampling, MonotoneCoerciveLipschitz) {
  const auto s = oracle::sample_n_tensor(law_of(GetParam()), 10000, 99u);
  EXPECT_EQ(s.violations, 0);
  EXPECT_GT(s.monotone_min, 0.0);
  EXPECT_GT(s.coercive_min, 0.0);
  EXPECT_TRUE(std::isfinite(s.lipschitz_max));
}

INSTANTIATE_TEST_SUITE_P(Laws, NSampling, ::testing::Values(LawId::linear, LawId::test1, LawId::test2),
                         [](const auto& info) { return std::string(law_name(info.param)); });

TEST(LawNames, Parse) {
  for (LawId id : {LawId::linear, LawId::test1, LawId::test2}) EXPECT_EQ(parse_law(law_name(id)), id);
  EXPECT_FALSE(parse_law("neo-hookean").has_value());
}

}  // namespace
