#include "hmporo/constitutive.hpp"

#include <cmath>

#include "hmporo/error.hpp"

namespace hmporo {

double frobenius_norm(SymMat2 a) { return std::sqrt(contract(a, a)); }

double dev_scalar(SymMat2 eps) {
  const double d = eps.e11 - eps.e22;
  return 0.5 * d * d + 2.0 * eps.e12 * eps.e12;
}

std::string_view law_name(LawId id) {
  switch (id) {
    case LawId::linear: return "linear";
    case LawId::test1: return "test1";
    case LawId::test2: return "test2";
  }
  return "?";
}

std::optional<LawId> parse_law(std::string_view name) {
  if (name == "linear") return LawId::linear;
  if (name == "test1") return LawId::test1;
  if (name == "test2") return LawId::test2;
  return std::nullopt;
}

ConstitutiveLaw::ConstitutiveLaw(LawId id, double lambda, double mu) : id_(id), lambda_(lambda), mu_(mu) {
  if (!(lambda > 0.0) || !(mu > 0.0)) throw ParameterError("constitutive law needs lambda > 0 and mu > 0");
}

double ConstitutiveLaw::phi(double rho) const {
  switch (id_) {
    case LawId::linear: return rho;
    case LawId::test1: return std::sqrt(1.0 + rho);
    case LawId::test2: return rho + 0.5 * std::exp(-rho);
  }
  return 0.0;
}

double ConstitutiveLaw::phi_prime(double rho) const {
  switch (id_) {
    case LawId::linear: return 1.0;
    case LawId::test1: return 0.5 / std::sqrt(1.0 + rho);
    case LawId::test2: return 1.0 - 0.5 * std::exp(-rho);
  }
  return 0.0;
}

double ConstitutiveLaw::kappa(double rho) const {
  switch (id_) {
    case LawId::linear: return lambda_ + mu_;
    case LawId::test1: return 1.0 / lambda_ + 0.5 * mu_;
    case LawId::test2: return 1.0 / lambda_ + 0.5 * mu_ * std::exp(-rho);
  }
  return 0.0;
}

LameTilde ConstitutiveLaw::lame_tilde(double rho) const {
  const double mu_tilde = 2.0 * mu_ * phi_prime(rho);
  return {mu_tilde, kappa(rho) - 0.5 * mu_tilde};
}

SymMat2 ConstitutiveLaw::stress(SymMat2 eps) const {
  const auto [mt, lt] = lame_tilde(dev_scalar(eps));
  return mt * eps + (lt * eps.trace()) * SymMat2::identity();
}

SymMat2 ConstitutiveLaw::n_tensor(SymMat2 eps) const {
  return stress(eps) - (eps.trace() / lambda_) * SymMat2::identity();
}

double ConstitutiveLaw::stored_energy(SymMat2 eps) const {
  const double rho = dev_scalar(eps);
  const double tr = eps.trace();
  return 0.5 * kappa(rho) * tr * tr + mu_ * phi(rho);
}

FrozenCoefficients ConstitutiveLaw::frozen(SymMat2 eps) const {
  const double rho = dev_scalar(eps);
  // lambda~ - 1/lambda written out per law: kappa(rho) carries 1/lambda
  // for test1/test2, and subtracting it in floating point would lose the
  // exact zero at rho = 0.
  const double mt = 2.0 * mu_ * phi_prime(rho);
  switch (id_) {
    case LawId::linear: return {mt, lambda_ - 1.0 / lambda_};
    case LawId::test1: return {mt, 0.5 * mu_ - 0.5 * mt};
    case LawId::test2: return {mt, 0.5 * mu_ * std::exp(-rho) - 0.5 * mt};
  }
  return {mt, 0.0};
}

}  // namespace hmporo
