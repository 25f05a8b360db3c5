#include "hmporo/manufactured.hpp"

#include <cmath>
#include <numbers>

#include "hmporo/fields.hpp"

namespace hmporo {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

std::string_view case_name(CaseId id) {
  switch (id) {
    case CaseId::test1: return "test1";
    case CaseId::test2: return "test2";
    case CaseId::patch: return "patch";
    case CaseId::zero: return "zero";
  }
  return "?";
}

std::optional<CaseId> parse_case(std::string_view name) {
  if (name == "test1") return CaseId::test1;
  if (name == "test2") return CaseId::test2;
  if (name == "patch") return CaseId::patch;
  if (name == "zero") return CaseId::zero;
  return std::nullopt;
}

PhysicalParams ManufacturedCase::table_params(CaseId id) {
  PhysicalParams p;  // E = 1e6, nu = 0.499, alpha = 1, K = 1e-5, mu_f = 1
  switch (id) {
    case CaseId::test1: p.c0 = 1e3; break;
    case CaseId::test2: p.c0 = 2.0; break;
    case CaseId::patch:
      p.E = 1e3;
      p.nu = 0.3;
      p.c0 = 1.0;
      p.K = 1e-2;
      break;
    case CaseId::zero: p.c0 = 1e3; break;
  }
  return p;
}

LawId ManufacturedCase::default_law(CaseId id) {
  switch (id) {
    case CaseId::test1: return LawId::test1;
    case CaseId::test2: return LawId::test2;
    default: return LawId::linear;
  }
}

ManufacturedCase::ManufacturedCase(CaseId id, const PhysicalParams& params, std::optional<LawId> law)
    : id_(id),
      params_(params),
      coeffs_(derive_coeffs(params)),
      law_(law.value_or(default_law(id)), coeffs_) {}

double test1_dev_closed_form(double x, double y, double t) {
  const double sx = std::sin(kPi * x), cx = std::cos(kPi * x);
  const double sy = std::sin(kPi * y), cy = std::cos(kPi * y);
  return kPi * kPi * t * t * t * t * (sx * sx * cy * cy + cx * cx * sy * sy);
}

ExactFields ManufacturedCase::exact(double x, double y, double t) const {
  ExactFields f{};
  f.u.setZero();
  f.grad_u.setZero();
  f.grad_p.setZero();
  switch (id_) {
    case CaseId::test1: {
      const double sx = std::sin(kPi * x), cx = std::cos(kPi * x);
      const double sy = std::sin(kPi * y), cy = std::cos(kPi * y);
      const double t2 = t * t;
      const double s = t2 * sx * sy;
      f.u = {s, s};
      f.grad_u << t2 * kPi * cx * sy, t2 * kPi * sx * cy, t2 * kPi * cx * sy, t2 * kPi * sx * cy;
      f.p = -(t / kPi) * std::sin(kPi * (x + y));
      const double gp = -t * std::cos(kPi * (x + y));
      f.grad_p = {gp, gp};
      break;
    }
    case CaseId::test2:
      f.u = {t * x * x, t * y * y};
      f.grad_u << 2.0 * t * x, 0.0, 0.0, 2.0 * t * y;
      f.p = t * (x * x + y * y);
      f.grad_p = {2.0 * t * x, 2.0 * t * y};
      break;
    case CaseId::patch:
      f.u = {t * x * x, t * y * y};
      f.grad_u << 2.0 * t * x, 0.0, 0.0, 2.0 * t * y;
      f.p = t * (x + y);
      f.grad_p = {t, t};
      break;
    case CaseId::zero: break;
  }
  f.strain = strain_of(f.grad_u);
  f.div_u = f.grad_u.trace();
  const auto xe = to_xi_eta(f.p, f.div_u, coeffs_);
  f.xi = xe.xi;
  f.eta = xe.eta;
  return f;
}

Vec2 ManufacturedCase::body_force(double x, double y, double t) const {
  const double alpha = params_.alpha;
  const double mu = coeffs_.mu;
  const double lambda = coeffs_.lambda;
  switch (id_) {
    case CaseId::test1: {
      // -div sigma + alpha grad p by the chain rule through
      // mu~ = mu g(rho), lambda~ = 1/lambda + mu/2 - mu g(rho)/2, g = (1+rho)^(-1/2).
      const double pi2 = kPi * kPi;
      const double sx = std::sin(kPi * x), cx = std::cos(kPi * x);
      const double sy = std::sin(kPi * y), cy = std::cos(kPi * y);
      const double sp = std::sin(kPi * (x + y)), cp = std::cos(kPi * (x + y));
      const double t2 = t * t;
      const double e11 = t2 * kPi * cx * sy;
      const double e22 = t2 * kPi * sx * cy;
      const double e12 = 0.5 * t2 * kPi * sp;
      const double tr = t2 * kPi * sp;
      const std::array<double, 2> d_e11{-t2 * pi2 * sx * sy, t2 * pi2 * cx * cy};
      const std::array<double, 2> d_e22{t2 * pi2 * cx * cy, -t2 * pi2 * sx * sy};
      const double d_e12 = 0.5 * t2 * pi2 * cp;  // same in x and y
      const double d_tr = t2 * pi2 * cp;
      std::array<double, 2> d_rho{};
      for (int k = 0; k < 2; ++k) d_rho[k] = (e11 - e22) * (d_e11[k] - d_e22[k]) + 4.0 * e12 * d_e12;

      const double rho = test1_dev_closed_form(x, y, t);
      const double g = 1.0 / std::sqrt(1.0 + rho);
      const double dg = -0.5 * g * g * g;
      const double mt = mu * g, dmt = mu * dg;
      const double lt = 1.0 / lambda + 0.5 * mu - 0.5 * mu * g, dlt = -0.5 * mu * dg;

      const double div_x = dlt * d_rho[0] * tr + lt * d_tr + dmt * (d_rho[0] * e11 + d_rho[1] * e12) +
                           mt * (d_e11[0] + d_e12);
      const double div_y = dlt * d_rho[1] * tr + lt * d_tr + dmt * (d_rho[0] * e12 + d_rho[1] * e22) +
                           mt * (d_e12 + d_e22[1]);
      const double gp = -t * cp;
      return {-div_x + alpha * gp, -div_y + alpha * gp};
    }
    case CaseId::test2: {
      const double ex = std::exp(-2.0 * t * t * (x - y) * (x - y));
      const double common = 2.0 * t / lambda + 2.0 * mu * t;
      return {-(8.0 * mu * t * t * t * (y * y - x * y) * ex + common) + 2.0 * t * alpha * x,
              -(8.0 * mu * t * t * t * (x * x - x * y) * ex + common) + 2.0 * t * alpha * y};
    }
    case CaseId::patch: {
      // Valid for the linear law: sigma = lambda tr(e) I + 2 mu e.
      const double v = -(2.0 * t * lambda + 4.0 * mu * t) + alpha * t;
      return {v, v};
    }
    case CaseId::zero: break;
  }
  return Vec2::Zero();
}

double ManufacturedCase::source(double x, double y, double t) const {
  const double alpha = params_.alpha;
  const double c0 = params_.c0;
  const double k_mu = params_.K / params_.mu_f;
  switch (id_) {
    case CaseId::test1:
      return (-c0 / kPi + 2.0 * alpha * kPi * t - 2.0 * kPi * t * k_mu) * std::sin(kPi * x + kPi * y);
    case CaseId::test2: return c0 * (x * x + y * y) + 2.0 * alpha * (x + y) - 4.0 * t * k_mu;
    case CaseId::patch: return (c0 + 2.0 * alpha) * (x + y);
    case CaseId::zero: break;
  }
  return 0.0;
}

Vec2 ManufacturedCase::traction(double x, double y, double t, const Vec2& normal) const {
  const auto f = exact(x, y, t);
  const SymMat2 s = law_.stress(f.strain);
  const double ap = params_.alpha * f.p;
  return {s.e11 * normal[0] + s.e12 * normal[1] - ap * normal[0],
          s.e12 * normal[0] + s.e22 * normal[1] - ap * normal[1]};
}

double ManufacturedCase::flux(double x, double y, double t, const Vec2& normal) const {
  const auto f = exact(x, y, t);
  const Vec2 g(params_.rho_f_g[0], params_.rho_f_g[1]);
  return -(params_.K / params_.mu_f) * (f.grad_p - g).dot(normal);
}

Forcing ManufacturedCase::forcing() const {
  if (id_ == CaseId::zero) return {};
  const ManufacturedCase self = *this;
  return {[self](Point2 x, double t) { return self.body_force(x.x, x.y, t); },
          [self](Point2 x, double t) { return self.source(x.x, x.y, t); }};
}

BoundaryData ManufacturedCase::boundary(FlowBoundary flow) const {
  BoundaryData bd;
  bd.u_dirichlet[tag_index(BoundaryTag::gamma1)] = {true, false};
  bd.u_dirichlet[tag_index(BoundaryTag::gamma3)] = {true, false};
  bd.u_dirichlet[tag_index(BoundaryTag::gamma2)] = {false, true};
  bd.u_dirichlet[tag_index(BoundaryTag::gamma4)] = {false, true};
  bd.flow = flow;
  if (id_ == CaseId::zero) return bd;
  const ManufacturedCase self = *this;
  bd.u_value = [self](Point2 x, double t) { return self.exact(x.x, x.y, t).u; };
  bd.traction = [self](Point2 x, double t, Vec2 n) { return self.traction(x.x, x.y, t, n); };
  if (flow == FlowBoundary::dirichlet_xi_eta) {
    bd.xi_eta_value = [self](Point2 x, double t) {
      const auto f = self.exact(x.x, x.y, t);
      return XiEta{f.xi, f.eta};
    };
  } else {
    bd.flux = [self](Point2 x, double t, Vec2 n) { return self.flux(x.x, x.y, t, n); };
  }
  return bd;
}

InitialData ManufacturedCase::initial() const {
  if (id_ == CaseId::zero) return {};
  const ManufacturedCase self = *this;
  return {[self](Point2 x, double) { return self.exact(x.x, x.y, 0.0).u; },
          [self](Point2 x, double) { return self.exact(x.x, x.y, 0.0).p; },
          [self](Point2 x, double) { return self.exact(x.x, x.y, 0.0).div_u; }};
}

Problem ManufacturedCase::make_problem(int n, FlowBoundary flow) const {
  Problem pb(build_structured_mesh(n), params_, law_.id());
  pb.forcing = forcing();
  pb.boundary = boundary(flow);
  pb.initial = initial();
  return pb;
}

}  // namespace hmporo
