#pragma once

#include <optional>
#include <string_view>

#include "hmporo/constitutive.hpp"
#include "hmporo/fem_basis.hpp"
#include "hmporo/params.hpp"
#include "hmporo/problem.hpp"

namespace hmporo {

/// Manufactured problems on the unit square, T = 1.
///   test1: u = t^2 (sin pi x sin pi y, sin pi x sin pi y), p = -(t/pi) sin(pi x + pi y), test1 law
///   test2: u = t (x^2, y^2), p = t (x^2 + y^2), test2 law
///   patch: u = t (x^2, y^2), p = t (x + y), linear law; lies in the discrete space
///   zero:  everything identically zero, linear law
enum class CaseId { test1, test2, patch, zero };

std::string_view case_name(CaseId id);
std::optional<CaseId> parse_case(std::string_view name);

struct ExactFields {
  Vec2 u;
  Mat2 grad_u;
  SymMat2 strain;
  double div_u;
  double p;
  Vec2 grad_p;
  double xi;
  double eta;
};

class ManufacturedCase {
 public:
  /// Parameters of the published tables: c0 = 1e3 for test1, c0 = 2 for test2.
  static PhysicalParams table_params(CaseId id);
  static LawId default_law(CaseId id);

  explicit ManufacturedCase(CaseId id) : ManufacturedCase(id, table_params(id)) {}
  ManufacturedCase(CaseId id, const PhysicalParams& params, std::optional<LawId> law = std::nullopt);

  CaseId id() const { return id_; }
  const PhysicalParams& params() const { return params_; }
  const DerivedCoeffs& coeffs() const { return coeffs_; }
  const ConstitutiveLaw& law() const { return law_; }

  ExactFields exact(double x, double y, double t) const;
  Vec2 body_force(double x, double y, double t) const;
  double source(double x, double y, double t) const;
  /// f1 = sigma(u) n - alpha p n, with sigma from the constitutive law.
  Vec2 traction(double x, double y, double t, const Vec2& normal) const;
  /// phi1 = -(K/mu_f) (grad p - rho_f g) . n
  double flux(double x, double y, double t, const Vec2& normal) const;

  Forcing forcing() const;
  /// u1 Dirichlet on Gamma1 and Gamma3, u2 Dirichlet on Gamma2 and Gamma4,
  /// traction on the complementary components, pressure data per `flow`.
  BoundaryData boundary(FlowBoundary flow) const;
  InitialData initial() const;

  Problem make_problem(int n, FlowBoundary flow = FlowBoundary::dirichlet_xi_eta) const;

 private:
  CaseId id_;
  PhysicalParams params_;
  DerivedCoeffs coeffs_;
  ConstitutiveLaw law_;
};

/// Closed form of dev(eps(u)) for the test1 displacement:
/// pi^2 t^4 (sin^2 pi x cos^2 pi y + cos^2 pi x sin^2 pi y).
double test1_dev_closed_form(double x, double y, double t);

}  // namespace hmporo
