#include "checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "dense_lu.hpp"
#include "dense_oracle.hpp"
#include "hmporo/fields.hpp"
#include "hmporo/linear_solver.hpp"

namespace oracle {

namespace {

using hmporo::SymMat2;
using hmporo::Vec2;

// Fourth-order central difference of a scalar function of one variable.
template <class F>
double d1(F f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

SymMat2 strain_fd(const hmporo::ManufacturedCase& mc, double x, double y, double t, double h) {
  const auto u1 = [&](double a, double b) { return mc.exact(a, b, t).u[0]; };
  const auto u2 = [&](double a, double b) { return mc.exact(a, b, t).u[1]; };
  const double u1x = d1([&](double s) { return u1(s, y); }, x, h);
  const double u1y = d1([&](double s) { return u1(x, s); }, y, h);
  const double u2x = d1([&](double s) { return u2(s, y); }, x, h);
  const double u2y = d1([&](double s) { return u2(x, s); }, y, h);
  return {u1x, u2y, 0.5 * (u1y + u2x)};
}

}  // namespace

double momentum_residual(const hmporo::ManufacturedCase& mc, double x, double y, double t) {
  const double h = 1e-3;
  const auto sigma = [&](double a, double b) { return mc.law().stress(strain_fd(mc, a, b, t, h)); };
  const double s11x = d1([&](double s) { return sigma(s, y).e11; }, x, h);
  const double s12y = d1([&](double s) { return sigma(x, s).e12; }, y, h);
  const double s12x = d1([&](double s) { return sigma(s, y).e12; }, x, h);
  const double s22y = d1([&](double s) { return sigma(x, s).e22; }, y, h);
  const double alpha = mc.params().alpha;
  const double px = d1([&](double s) { return mc.exact(s, y, t).p; }, x, h);
  const double py = d1([&](double s) { return mc.exact(x, s, t).p; }, y, h);
  const Vec2 f = mc.body_force(x, y, t);
  const Vec2 lhs(-(s11x + s12y) + alpha * px, -(s12x + s22y) + alpha * py);
  const double scale = std::max({std::abs(s11x) + std::abs(s12y) + std::abs(alpha * px),
                                 std::abs(s12x) + std::abs(s22y) + std::abs(alpha * py), 1.0});
  return (lhs - f).cwiseAbs().maxCoeff() / scale;
}

double mass_residual(const hmporo::ManufacturedCase& mc, double x, double y, double t) {
  const double h = 1e-3;
  const auto& pr = mc.params();
  const auto content = [&](double a, double b, double s) {
    const auto e = strain_fd(mc, a, b, s, h);
    return pr.c0 * mc.exact(a, b, s).p + pr.alpha * e.trace();
  };
  const double dt_content = d1([&](double s) { return content(x, y, s); }, t, h);
  const auto p = [&](double a, double b) { return mc.exact(a, b, t).p; };
  const double pxx = d1([&](double s) { return d1([&](double r) { return p(r, y); }, s, h); }, x, h);
  const double pyy = d1([&](double s) { return d1([&](double r) { return p(x, r); }, s, h); }, y, h);
  const double k = pr.K / pr.mu_f;
  const double lhs = dt_content - k * (pxx + pyy);
  const double scale = std::max({std::abs(dt_content), std::abs(k * (pxx + pyy)), 1e-8});
  return std::abs(lhs - mc.source(x, y, t)) / scale;
}

double worst_firewall_residual(const hmporo::ManufacturedCase& mc, int count, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> in(0.05, 0.95), time(0.1, 1.0);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const double x = in(rng), y = in(rng), t = time(rng);
    worst = std::max({worst, momentum_residual(mc, x, y, t), mass_residual(mc, x, y, t)});
  }
  return worst;
}

double energy_gradient_error(const hmporo::ConstitutiveLaw& law, int count, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const SymMat2 e{unif(rng), unif(rng), unif(rng)};
    const double h = 1e-6;
    std::array<double, 3> g;
    for (int c = 0; c < 3; ++c) {
      const auto psi = [&](double s) {
        SymMat2 p = e;
        (c == 0 ? p.e11 : c == 1 ? p.e22 : p.e12) = s;
        return law.stored_energy(p);
      };
      g[c] = d1(psi, c == 0 ? e.e11 : c == 1 ? e.e22 : e.e12, h);
    }
    const SymMat2 s = law.stress(e);
    // The e12 slot stands for both off-diagonal entries.
    const SymMat2 fd{g[0], g[1], 0.5 * g[2]};
    worst = std::max(worst, hmporo::frobenius_norm(fd - s) / hmporo::frobenius_norm(s));
  }
  return worst;
}

MonotoneSample sample_n_tensor(const hmporo::ConstitutiveLaw& law, int count, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const auto draw = [&] { return SymMat2{unif(rng), unif(rng), unif(rng)}; };
  MonotoneSample out;
  out.monotone_min = out.coercive_min = INFINITY;
  for (int i = 0; i < count; ++i) {
    const SymMat2 a = draw(), b = draw();
    const SymMat2 d = a - b;
    const double dd = hmporo::contract(d, d);
    const SymMat2 dn = law.n_tensor(a) - law.n_tensor(b);
    const double mono = hmporo::contract(dn, d);
    if (mono < 0) ++out.violations;
    out.monotone_min = std::min(out.monotone_min, mono / dd);
    out.lipschitz_max = std::max(out.lipschitz_max, hmporo::frobenius_norm(dn) / std::sqrt(dd));
    out.coercive_min = std::min(out.coercive_min, hmporo::contract(law.n_tensor(a), a) / hmporo::contract(a, a));
  }
  return out;
}

double test1_dev_mismatch(const hmporo::ManufacturedCase& mc, int count, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const double x = unif(rng), y = unif(rng), t = unif(rng);
    const double closed = hmporo::test1_dev_closed_form(x, y, t);
    const double rho = hmporo::dev_scalar(mc.exact(x, y, t).strain);
    worst = std::max(worst, std::abs(rho - closed) / std::max(1.0, closed));
  }
  return worst;
}

double kappa_identity_error(int count, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> log_lambda(2.0, 9.0), alpha_d(0.1, 10.0), c0_d(0.0, 1e4);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const double lambda = std::pow(10.0, log_lambda(rng)), alpha = alpha_d(rng), c0 = c0_d(rng);
    const auto k = hmporo::derive_kappas(lambda, alpha, c0);
    const double e1 = std::abs(alpha * k.kappa1 + c0 * k.kappa2 - 1.0);
    const double e2 = std::abs(k.kappa1 - lambda * alpha * k.kappa2) / k.kappa1;
    const double e3 = k.kappa3 == 0.0 ? 0.0 : std::abs(k.kappa3 - c0 * k.kappa1 / alpha) / k.kappa3;
    worst = std::max({worst, e1, e2, e3});
  }
  return worst;
}

double roundtrip_error(int count, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(-10.0, 10.0);
  double worst = 0.0;
  for (const double c0 : {1e3, 2.0, 0.0}) {
    hmporo::PhysicalParams pp;
    pp.c0 = c0;
    const auto c = hmporo::derive_coeffs(pp);
    for (int i = 0; i < count; ++i) {
      const double p = unif(rng), q = unif(rng);
      const auto xe = hmporo::to_xi_eta(p, q, c);
      const auto pq = hmporo::from_xi_eta(xe.xi, xe.eta, c);
      // eta = c0 p + alpha q is rounded at the size of c0 p, so errors are
      // measured against the largest quantity the roundtrip passes through.
      const double scale = std::max({std::abs(p), std::abs(q), std::abs(xe.xi), std::abs(xe.eta)});
      worst = std::max({worst, std::abs(pq.p - p) / scale, std::abs(pq.q - q) / scale});
      const double xi = unif(rng), eta = unif(rng);
      const auto back = hmporo::from_xi_eta(xi, eta, c);
      const auto xe2 = hmporo::to_xi_eta(back.p, back.q, c);
      const double s2 = std::max({std::abs(xi), std::abs(eta), std::abs(back.p), std::abs(back.q)});
      worst = std::max({worst, std::abs(xe2.xi - xi) / s2, std::abs(xe2.eta - eta) / s2});
    }
  }
  return worst;
}

namespace {

double row_relative_gap(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const double scale = std::max(a.row(i).cwiseAbs().maxCoeff(), b.row(i).cwiseAbs().maxCoeff());
    if (scale == 0.0) continue;
    worst = std::max(worst, (a.row(i) - b.row(i)).cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

double vector_gap(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
  return scale == 0.0 ? 0.0 : (a - b).cwiseAbs().maxCoeff() / scale;
}

double field_gap(const hmporo::DofMap& d, hmporo::SystemKind kind, const Eigen::VectorXd& a,
                 const Eigen::VectorXd& b) {
  std::vector<std::pair<int, int>> blocks;
  if (kind != hmporo::SystemKind::flow) {
    blocks.emplace_back(0, d.xi_offset);
    blocks.emplace_back(d.xi_offset, d.num_vertices);
  }
  if (kind != hmporo::SystemKind::mechanics)
    blocks.emplace_back(kind == hmporo::SystemKind::flow ? 0 : d.eta_offset, d.num_vertices);
  double worst = 0.0;
  for (auto [start, len] : blocks) worst = std::max(worst, vector_gap(a.segment(start, len), b.segment(start, len)));
  return worst;
}

}  // namespace

OracleGap compare_with_oracle(int n, hmporo::CaseId id, hmporo::LawId law, int theta, hmporo::FlowBoundary flow) {
  using namespace hmporo;
  const ManufacturedCase mc(id, ManufacturedCase::table_params(id), law);
  const Problem pb = mc.make_problem(n, flow);
  std::mt19937 rng(17u + static_cast<unsigned>(n));
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  FieldState prev = FieldState::zeros(pb.dofs, 0.0);
  for (Eigen::Index i = 0; i < prev.u.size(); ++i) prev.u[i] = 0.3 * unif(rng);
  for (Eigen::Index i = 0; i < prev.xi.size(); ++i) prev.xi[i] = unif(rng);
  for (Eigen::Index i = 0; i < prev.eta.size(); ++i) prev.eta[i] = unif(rng);
  Eigen::VectorXd uf(prev.u.size());
  for (Eigen::Index i = 0; i < uf.size(); ++i) uf[i] = 0.3 * unif(rng);
  const double dt = 0.25, t_next = 0.75;
  const StepInputs in{prev, uf, t_next, dt, theta};

  OracleGap gap;
  const auto check = [&](const SparseSystem& lib, const DenseSystem& ref) -> Eigen::VectorXd {
    if (lib.size() != ref.b.size()) {
      gap.matrix = gap.rhs = gap.solution = INFINITY;
      return Eigen::VectorXd::Zero(lib.size());
    }
    gap.matrix = std::max(gap.matrix, row_relative_gap(Eigen::MatrixXd(lib.matrix), ref.a));
    gap.rhs = std::max(gap.rhs, field_gap(pb.dofs, lib.kind, lib.rhs, ref.b));
    const Eigen::VectorXd x_lib = sparse_solve(lib);
    const Eigen::VectorXd x_ref = dense_lu_solve_scaled(ref.a, ref.b);
    gap.solution = std::max(gap.solution, field_gap(pb.dofs, lib.kind, x_lib, x_ref));
    return x_lib;
  };

  check(assemble_step_system(pb, in), assemble_dense(pb, Block::monolithic, prev, uf, t_next, dt, theta));
  if (theta == 0) {
    const Eigen::VectorXd x =
        check(assemble_mechanics_system(pb, in), assemble_dense(pb, Block::mechanics, prev, uf, t_next, dt, 0));
    const Eigen::VectorXd xi = x.segment(pb.dofs.xi_offset, pb.dofs.num_vertices);
    check(assemble_flow_system(pb, in, xi), assemble_dense(pb, Block::flow, prev, uf, t_next, dt, 0, &xi));
  }
  return gap;
}

}  // namespace oracle
