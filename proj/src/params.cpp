#include "hmporo/params.hpp"

#include <cmath>
#include <sstream>

#include "hmporo/error.hpp"

namespace hmporo {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ParameterError(what);
}

}  // namespace

void PhysicalParams::validate() const {
  require(std::isfinite(E) && E > 0.0, "E must be positive");
  require(nu >= 0.0 && nu < 0.5, "nu must lie in [0, 0.5)");
  require(alpha > 0.0, "alpha must be positive");
  require(c0 >= 0.0, "c0 must be nonnegative");
  require(K > 0.0, "K must be positive");
  require(mu_f > 0.0, "mu_f must be positive");
}

LameConstants derive_lame(double E, double nu) {
  if (!(nu < 0.5)) {
    std::ostringstream os;
    os << "nu = " << nu << " makes lambda singular (requires nu < 0.5)";
    throw ParameterError(os.str());
  }
  require(E > 0.0, "E must be positive");
  return {E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu)), E / (2.0 * (1.0 + nu))};
}

KappaCoeffs derive_kappas(double lambda, double alpha, double c0) {
  require(lambda > 0.0, "lambda must be positive");
  require(alpha > 0.0, "alpha must be positive");
  require(c0 >= 0.0, "c0 must be nonnegative");
  const double denom = lambda * alpha * alpha + c0;
  return {lambda * alpha / denom, 1.0 / denom, lambda * c0 / denom};
}

DerivedCoeffs derive_coeffs(const PhysicalParams& p) {
  p.validate();
  const auto lame = derive_lame(p);
  require(lame.lambda > 0.0, "the (xi, eta) reformulation needs lambda > 0, i.e. nu > 0");
  const auto k = derive_kappas(lame.lambda, p.alpha, p.c0);
  return {lame.lambda, lame.mu, p.alpha, p.c0, k.kappa1, k.kappa2, k.kappa3};
}

XiEta to_xi_eta(double p, double div_u, const DerivedCoeffs& c) {
  return {c.alpha * p - div_u / c.lambda, c.c0 * p + c.alpha * div_u};
}

PressureDilation from_xi_eta(double xi, double eta, const DerivedCoeffs& c) {
  return {c.kappa1 * xi + c.kappa2 * eta, c.kappa1 * eta - c.kappa3 * xi};
}

}  // namespace hmporo
