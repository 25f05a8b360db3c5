#pragma once

#include <optional>
#include <string_view>

#include "hmporo/params.hpp"

namespace hmporo {

/// Symmetric 2x2 tensor stored by its three independent components.
struct SymMat2 {
  double e11 = 0.0;
  double e22 = 0.0;
  double e12 = 0.0;

  double trace() const { return e11 + e22; }
  static SymMat2 identity() { return {1.0, 1.0, 0.0}; }

  friend SymMat2 operator+(SymMat2 a, SymMat2 b) { return {a.e11 + b.e11, a.e22 + b.e22, a.e12 + b.e12}; }
  friend SymMat2 operator-(SymMat2 a, SymMat2 b) { return {a.e11 - b.e11, a.e22 - b.e22, a.e12 - b.e12}; }
  friend SymMat2 operator*(double s, SymMat2 a) { return {s * a.e11, s * a.e22, s * a.e12}; }
};

/// Double contraction a : b (the off-diagonal pair counts twice).
inline double contract(SymMat2 a, SymMat2 b) { return a.e11 * b.e11 + a.e22 * b.e22 + 2.0 * a.e12 * b.e12; }
double frobenius_norm(SymMat2 a);

/// Scalar deviatoric invariant tr(e^2) - tr(e)^2 / 2 = (e11 - e22)^2 / 2 + 2 e12^2.
/// This is a nonnegative number, not the deviatoric tensor.
double dev_scalar(SymMat2 eps);

enum class LawId { linear, test1, test2 };

std::string_view law_name(LawId id);
std::optional<LawId> parse_law(std::string_view name);

struct LameTilde {
  double mu_tilde;
  double lambda_tilde;
};

/// Coefficients of the Picard-linearized N: N_lin(e) = mu_tilde e + shifted_lambda tr(e) I.
struct FrozenCoefficients {
  double mu_tilde;
  double shifted_lambda;  ///< lambda_tilde - 1/lambda
};

/// Hencky-Mises stress family sigma = lambda~(rho) tr(e) I + mu~(rho) e with
/// mu~ = 2 mu Phi'(rho), lambda~ = kappa(rho) - mu~/2, rho = dev_scalar(e).
///
///   linear: Phi(rho) = rho,                Phi' = 1,                 kappa = lambda + mu
///   test1:  Phi(rho) = sqrt(1 + rho),      Phi' = (1 + rho)^(-1/2)/2, kappa = 1/lambda + mu/2
///   test2:  Phi(rho) = rho + e^(-rho)/2,   Phi' = 1 - e^(-rho)/2,    kappa = 1/lambda + (mu/2) e^(-rho)
class ConstitutiveLaw {
 public:
  ConstitutiveLaw(LawId id, double lambda, double mu);
  ConstitutiveLaw(LawId id, const DerivedCoeffs& c) : ConstitutiveLaw(id, c.lambda, c.mu) {}

  LawId id() const { return id_; }
  double lambda() const { return lambda_; }
  double mu() const { return mu_; }

  double phi(double rho) const;
  double phi_prime(double rho) const;
  double kappa(double rho) const;

  LameTilde lame_tilde(double rho) const;
  SymMat2 stress(SymMat2 eps) const;
  /// N(e) = sigma(e) - tr(e) I / lambda.
  SymMat2 n_tensor(SymMat2 eps) const;
  /// Psi(e) = kappa tr(e)^2 / 2 + mu Phi(rho). For test2 kappa is evaluated
  /// at the point value of rho, so its gradient is not sigma.
  double stored_energy(SymMat2 eps) const;
  FrozenCoefficients frozen(SymMat2 eps) const;

 private:
  LawId id_;
  double lambda_;
  double mu_;
};

}  // namespace hmporo
