#include "hmporo/solver.hpp"

#include <Eigen/QR>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

#include "hmporo/error.hpp"
#include "hmporo/fields.hpp"

namespace hmporo {

void SolverConfig::validate(double h) const {
  if (theta != 0 && theta != 1) throw InvalidArgument("theta must be 0 or 1");
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (!(t_end > 0.0)) throw InvalidArgument("t_end must be positive");
  if (!(picard_tol > 0.0) || picard_max < 1 || anderson_depth < 0) throw InvalidArgument("invalid Picard settings");
  const double steps = t_end / dt;
  if (std::abs(steps - std::round(steps)) > 2.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, steps))
    throw InvalidArgument("t_end / dt must be an integer number of steps");
  if (theta == 0 && !allow_unstable_dt && dt > stab_constant * h * h) {
    std::ostringstream os;
    os << "decoupled scheme requires dt <= " << stab_constant << " h^2 = " << stab_constant * h * h
       << " (got dt = " << dt << ")";
    throw StabilityProvisoViolated(os.str());
  }
}

Eigen::VectorXd recover_pressure(const Eigen::VectorXd& xi, const Eigen::VectorXd& eta, const DerivedCoeffs& c) {
  if (xi.size() != eta.size()) throw InvalidArgument("xi and eta sizes differ");
  return c.kappa1 * xi + c.kappa2 * eta;
}

FieldState initial_state(const Problem& pb) {
  const auto& d = pb.dofs;
  FieldState s = FieldState::zeros(d, 0.0);
  if (pb.initial.u0) {
    for (int k = 0; k < d.scalar_p2; ++k) {
      const Vec2 v = pb.initial.u0(d.p2_node_position(pb.mesh, k), 0.0);
      s.u[d.u_dof(0, k)] = v[0];
      s.u[d.u_dof(1, k)] = v[1];
    }
  }
  for (int v = 0; v < d.num_vertices; ++v) {
    const Point2 x = pb.mesh.vertices[v];
    const double p0 = pb.initial.p0 ? pb.initial.p0(x, 0.0) : 0.0;
    const double q0 = pb.initial.div_u0 ? pb.initial.div_u0(x, 0.0) : 0.0;
    const auto xe = to_xi_eta(p0, q0, pb.coeffs);
    s.xi[v] = xe.xi;
    s.eta[v] = xe.eta;
    s.p[v] = p0;
  }
  return s;
}

EnergyParts discrete_energy(const Problem& pb, const FieldState& state, double t) {
  EnergyParts e;
  const auto& rule = triangle_quadrature(kAssemblyQuadratureDegree);
  for (int k = 0; k < pb.mesh.num_triangles(); ++k) {
    for (const auto& qp : rule.points) {
      const auto map = map_to_physical(pb.mesh, k, qp.ref);
      const double w = qp.weight * std::abs(map.det);
      const auto u = sample_displacement(pb.mesh, pb.dofs, state.u, k, qp.ref);
      const double xi = sample_p1(pb.mesh, state.xi, k, qp.ref).value;
      const double eta = sample_p1(pb.mesh, state.eta, k, qp.ref).value;
      e.strain += w * contract(pb.law.n_tensor(u.strain), u.strain);
      e.xi += w * 0.5 * pb.coeffs.kappa3 * xi * xi;
      e.eta += w * 0.5 * pb.coeffs.kappa2 * eta * eta;
      if (pb.forcing.body_force) e.work += w * pb.forcing.body_force(map.physical, t).dot(u.value);
    }
  }
  e.work += assemble_traction(pb.mesh, pb.dofs, pb.boundary.traction, t, pb.boundary.u_dirichlet).dot(state.u);
  return e;
}

namespace {

Eigen::SparseMatrix<double> p2_stiffness(const Mesh& mesh, const DofMap& dofs) {
  std::vector<Eigen::Triplet<double>> trip;
  const auto& rule = triangle_quadrature(2);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto local = dofs.element_p2(mesh, t);
    Eigen::Matrix<double, 6, 6> k = Eigen::Matrix<double, 6, 6>::Zero();
    for (const auto& qp : rule.points) {
      const auto map = map_to_physical(mesh, t, qp.ref);
      const auto s = p2_basis().evaluate(qp.ref);
      const double w = qp.weight * std::abs(map.det);
      std::array<Vec2, 6> g;
      for (int i = 0; i < 6; ++i) g[i] = map.inv_transpose * s.grad[i];
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) k(i, j) += w * g[i].dot(g[j]);
    }
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) trip.emplace_back(local[i], local[j], k(i, j));
  }
  Eigen::SparseMatrix<double> m(dofs.scalar_p2, dofs.scalar_p2);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

}  // namespace

TimeIntegrator::TimeIntegrator(const Problem& problem, SolverConfig config)
    : problem_(problem),
      config_(config),
      stiffness_(p2_stiffness(problem.mesh, problem.dofs)),
      solver_(config.linear_tol, true),
      flow_solver_(config.linear_tol, true) {
  if (config_.theta != 0 && config_.theta != 1) throw InvalidArgument("theta must be 0 or 1");
}

double TimeIntegrator::h1_seminorm(const Eigen::VectorXd& u) const {
  const int s = problem_.dofs.scalar_p2;
  double sum = 0.0;
  for (int c = 0; c < 2; ++c) {
    const auto seg = u.segment(c * s, s);
    sum += seg.dot(stiffness_ * seg);
  }
  return std::sqrt(std::max(sum, 0.0));
}

StepResult TimeIntegrator::picard_step(const FieldState& prev, double t_next) {
  return picard_step(prev, t_next, prev.u);
}

StepResult TimeIntegrator::picard_step(const FieldState& prev, double t_next, const Eigen::VectorXd& initial_guess) {
  const auto& d = problem_.dofs;
  const double dt = t_next - prev.t;
  const int theta = config_.theta;
  const SystemKind kind = theta == 1 ? SystemKind::monolithic : SystemKind::mechanics;
  const int nu = 2 * d.scalar_p2;
  if (initial_guess.size() != nu) throw InvalidArgument("initial guess has the wrong length");

  // Anderson history: differences of successive images and residuals.
  std::deque<Eigen::VectorXd> d_image;
  std::deque<Eigen::VectorXd> d_resid;
  Eigen::VectorXd last_image;
  Eigen::VectorXd last_resid;

  Eigen::VectorXd u_iter = initial_guess;
  Eigen::VectorXd x;
  double increment = 0.0;
  double prev_increment = std::numeric_limits<double>::infinity();
  int growth = 0;
  int k = 0;
  for (;;) {
    ++k;
    const StepInputs in{prev, u_iter, t_next, dt, theta};
    const SparseSystem sys =
        kind == SystemKind::monolithic ? assemble_step_system(problem_, in) : assemble_mechanics_system(problem_, in);
    x = solver_.solve(sys.matrix, sys.rhs);
    const Eigen::VectorXd image = x.head(nu);
    const Eigen::VectorXd resid = image - u_iter;
    const double diff = h1_seminorm(resid);
    const double norm = h1_seminorm(image);
    increment = diff / std::max(norm, 1e-14);
    if (diff <= config_.picard_tol * std::max(norm, 1e-14)) {
      u_iter = image;
      break;
    }

    growth = increment > prev_increment ? growth + 1 : 0;
    prev_increment = increment;
    if (growth >= 5 || k >= config_.picard_max) {
      std::ostringstream os;
      os << "Picard iteration did not converge at t = " << t_next << " after " << k
         << " iterations (relative increment " << increment << ")";
      throw PicardDiverged(os.str(), k);
    }

    if (config_.anderson_depth <= 0) {
      u_iter = image;
      continue;
    }
    if (k > 1) {
      d_image.push_back(image - last_image);
      d_resid.push_back(resid - last_resid);
      if (static_cast<int>(d_image.size()) > config_.anderson_depth) {
        d_image.pop_front();
        d_resid.pop_front();
      }
    }
    last_image = image;
    last_resid = resid;
    if (d_resid.empty()) {
      u_iter = image;
      continue;
    }
    const auto cols = static_cast<Eigen::Index>(d_resid.size());
    Eigen::MatrixXd f(nu, cols);
    Eigen::MatrixXd g(nu, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
      f.col(j) = d_resid[j];
      g.col(j) = d_image[j];
    }
    const Eigen::VectorXd gamma = f.colPivHouseholderQr().solve(resid);
    u_iter = image - g * gamma;
  }

  StepResult r;
  r.iterations = k;
  r.increment = increment;
  r.state.t = t_next;
  r.state.u = u_iter;
  r.state.xi = x.segment(d.xi_offset, d.num_vertices);
  if (theta == 1) {
    r.state.eta = x.segment(d.eta_offset, d.num_vertices);
    r.eta_theta = r.state.eta;
  } else {
    const StepInputs in{prev, u_iter, t_next, dt, theta};
    const SparseSystem flow = assemble_flow_system(problem_, in, r.state.xi);
    r.state.eta = flow_solver_.solve(flow.matrix, flow.rhs);
    r.eta_theta = prev.eta;
  }
  r.state.p = recover_pressure(r.state.xi, r.eta_theta, problem_.coeffs);
  return r;
}

MarchResult TimeIntegrator::march(bool keep_trajectory, const StepObserver& observer) {
  config_.validate(problem_.mesh.h);
  const int steps = static_cast<int>(std::lround(config_.t_end / config_.dt));
  MarchResult out;
  FieldState state = initial_state(problem_);
  Eigen::VectorXd previous_u;
  if (keep_trajectory) out.trajectory.push_back(state);
  out.diagnostics.reserve(steps);
  for (int n = 1; n <= steps; ++n) {
    const double t_next = n == steps ? config_.t_end : n * config_.dt;
    StepResult r;
    try {
      if (config_.extrapolate_guess && n > 1)
        r = picard_step(state, t_next, 2.0 * state.u - previous_u);
      else
        r = picard_step(state, t_next);
    } catch (const PicardDiverged& e) {
      std::ostringstream os;
      os << "step " << n << ": " << e.what();
      throw PicardDiverged(os.str(), e.iterations());
    } catch (const LinearSolveFailed& e) {
      std::ostringstream os;
      os << "step " << n << ": " << e.what();
      throw LinearSolveFailed(os.str());
    }
    FieldState energy_state = r.state;
    energy_state.eta = r.eta_theta;
    const auto energy = discrete_energy(problem_, energy_state, t_next);
    StepDiagnostics diag{n, t_next, r.iterations, energy.total(), energy.stored(), r.increment};
    out.diagnostics.push_back(diag);
    if (config_.extrapolate_guess) previous_u = state.u;
    state = std::move(r.state);
    if (observer) observer(diag, state);
    if (keep_trajectory) out.trajectory.push_back(state);
  }
  out.final_state = std::move(state);
  return out;
}

StepResult picard_step(const Problem& problem, const FieldState& prev, double t_next, const SolverConfig& config) {
  TimeIntegrator ti(problem, config);
  return ti.picard_step(prev, t_next);
}

MarchResult time_march(const Problem& problem, const SolverConfig& config, bool keep_trajectory,
                       const StepObserver& observer) {
  TimeIntegrator ti(problem, config);
  return ti.march(keep_trajectory, observer);
}

}  // namespace hmporo
