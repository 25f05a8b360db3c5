#pragma once

#include <array>

namespace hmporo {

/// Material and fluid data of the poroelastic medium (SI units).
struct PhysicalParams {
  double E = 1e6;       ///< Young's modulus [Pa]
  double nu = 0.499;    ///< Poisson ratio
  double alpha = 1.0;   ///< Biot-Willis constant
  double c0 = 1e3;      ///< constrained specific storage [1/Pa]
  double K = 1e-5;      ///< isotropic permeability, K(x) = K I [m^2]
  double mu_f = 1.0;    ///< fluid viscosity [Pa s]
  std::array<double, 2> rho_f_g{0.0, 0.0};  ///< gravity body force [N/m^3]

  /// Throws ParameterError when an invariant is violated.
  void validate() const;
};

struct LameConstants {
  double lambda;
  double mu;
};

struct KappaCoeffs {
  double kappa1;
  double kappa2;
  double kappa3;
};

/// Lame constants together with the coefficients of the (xi, eta) change of
/// variables. alpha and c0 are carried along so that the conversions below
/// need only this one record.
struct DerivedCoeffs {
  double lambda;
  double mu;
  double alpha;
  double c0;
  double kappa1;
  double kappa2;
  double kappa3;
};

LameConstants derive_lame(double E, double nu);
inline LameConstants derive_lame(const PhysicalParams& p) { return derive_lame(p.E, p.nu); }

KappaCoeffs derive_kappas(double lambda, double alpha, double c0);

/// Validates `p` and requires lambda > 0 (nu > 0), since xi carries 1/lambda.
DerivedCoeffs derive_coeffs(const PhysicalParams& p);

struct XiEta {
  double xi;
  double eta;
};

struct PressureDilation {
  double p;
  double q;  ///< div u
};

/// xi = alpha p - q / lambda, eta = c0 p + alpha q.
XiEta to_xi_eta(double p, double div_u, const DerivedCoeffs& c);

/// p = kappa1 xi + kappa2 eta, q = kappa1 eta - kappa3 xi.
PressureDilation from_xi_eta(double xi, double eta, const DerivedCoeffs& c);

}  // namespace hmporo
