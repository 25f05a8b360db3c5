#include "hmporo/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>

#include "hmporo/error.hpp"
#include "hmporo/fields.hpp"

namespace hmporo {

ErrorNorms error_norms(const Problem& pb, const FieldState& state, const ManufacturedCase& mc, int degree) {
  const auto& rule = triangle_quadrature(degree);
  double u_l2 = 0.0, u_semi = 0.0, p_l2 = 0.0, p_semi = 0.0;
  for (int k = 0; k < pb.mesh.num_triangles(); ++k) {
    for (const auto& qp : rule.points) {
      const auto map = map_to_physical(pb.mesh, k, qp.ref);
      const double w = qp.weight * std::abs(map.det);
      const auto ex = mc.exact(map.physical.x, map.physical.y, state.t);
      const auto u = sample_displacement(pb.mesh, pb.dofs, state.u, k, qp.ref);
      const auto p = sample_p1(pb.mesh, state.p, k, qp.ref);
      u_l2 += w * (ex.u - u.value).squaredNorm();
      u_semi += w * (ex.grad_u - u.grad).squaredNorm();
      p_l2 += w * (ex.p - p.value) * (ex.p - p.value);
      p_semi += w * (ex.grad_p - p.grad).squaredNorm();
    }
  }
  return {std::sqrt(u_l2), std::sqrt(u_l2 + u_semi), std::sqrt(p_l2), std::sqrt(p_l2 + p_semi)};
}

double spatial_order(double err_coarse, double err_fine) {
  if (!(err_coarse > 0.0) || !(err_fine > 0.0)) throw InvalidArgument("convergence order needs positive errors");
  return std::log(err_coarse / err_fine) / std::log(2.0);
}

std::optional<double> temporal_order_T(double r1, double r2, double r4) {
  const double den = r2 - r4;
  if (den == 0.0 || !std::isfinite(den)) return std::nullopt;
  return std::abs((r1 - r2) / den);
}

void ConvergenceReport::compute_orders() {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& row = rows[i];
    row.orders = {};
    if (row.failed) continue;
    const auto cur = row.errors.as_array();
    if (kind == StudyKind::spatial) {
      if (i < 1 || rows[i - 1].failed) continue;
      const auto prev = rows[i - 1].errors.as_array();
      for (int c = 0; c < 4; ++c)
        if (prev[c] > kErrorFloor && cur[c] > kErrorFloor) row.orders[c] = spatial_order(prev[c], cur[c]);
    } else {
      if (i < 2 || rows[i - 1].failed || rows[i - 2].failed) continue;
      const auto r1 = rows[i - 2].errors.as_array();
      const auto r2 = rows[i - 1].errors.as_array();
      for (int c = 0; c < 4; ++c)
        if (r1[c] > kErrorFloor && r2[c] > kErrorFloor && cur[c] > kErrorFloor)
          row.orders[c] = temporal_order_T(r1[c], r2[c], cur[c]);
    }
  }
}

namespace {

std::string fmt_error(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string fmt_order(const std::optional<double>& v, const char* missing) {
  if (!v) return missing;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", *v);
  return buf;
}

// "1/n" when x is the reciprocal of an integer, %.6e otherwise.
std::string fmt_reciprocal(double x) {
  const double inv = 1.0 / x;
  const double r = std::round(inv);
  if (r >= 1.0 && std::abs(inv - r) < 1e-9 * r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "1/%.0f", r);
    return buf;
  }
  return fmt_error(x);
}

}  // namespace

std::string ConvergenceReport::to_csv() const {
  std::ostringstream os;
  const char* order_name = kind == StudyKind::spatial ? "ord" : "ordT";
  os << "n,h,dt";
  for (const char* col : {"u_L2", "u_H1", "p_L2", "p_H1"}) os << ",err_" << col << ',' << order_name << '_' << col;
  os << ",picard_iterations,status\n";
  for (const auto& row : rows) {
    os << row.n << ',' << fmt_error(row.h) << ',' << fmt_error(row.dt);
    const auto e = row.errors.as_array();
    for (int c = 0; c < 4; ++c) {
      os << ',' << (row.failed ? std::string() : fmt_error(e[c]));
      os << ',' << fmt_order(row.orders[c], "");
    }
    os << ',' << row.picard_iterations << ',' << (row.failed ? "failed" : "ok") << '\n';
  }
  return os.str();
}

std::string ConvergenceReport::to_markdown() const {
  std::ostringstream os;
  const bool spatial = kind == StudyKind::spatial;
  const char* order = spatial ? "order" : "order_T";
  os << "| " << (spatial ? "h" : "Δt") << " | ‖u−u_h‖_L2 | " << order << " | ‖u−u_h‖_H1 | " << order
     << " | ‖p−p_h‖_L2 | " << order << " | ‖p−p_h‖_H1 | " << order << " |\n";
  os << "|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& row : rows) {
    os << "| " << fmt_reciprocal(spatial ? row.h : row.dt);
    if (row.failed) {
      os << " | failed: " << row.failure << " | | | | | | | |\n";
      continue;
    }
    const auto e = row.errors.as_array();
    for (int c = 0; c < 4; ++c) os << " | " << fmt_error(e[c]) << " | " << fmt_order(row.orders[c], "—");
    os << " |\n";
  }
  return os.str();
}

namespace {

ConvergenceRow run_level(const ManufacturedCase& mc, int n, double dt, const StudyOptions& opt) {
  ConvergenceRow row;
  row.n = n;
  row.h = 1.0 / n;
  row.dt = dt;
  try {
    const Problem pb = mc.make_problem(n, opt.flow);
    SolverConfig cfg = opt.solver;
    cfg.dt = dt;
    const auto result = time_march(pb, cfg);
    for (const auto& d : result.diagnostics) row.picard_iterations += d.picard_iterations;
    row.errors = error_norms(pb, result.final_state, mc);
  } catch (const Error& e) {
    row.failed = true;
    std::ostringstream os;
    os << "n = " << n << ", dt = " << dt << ": " << e.what();
    row.failure = os.str();
  }
  return row;
}

ConvergenceReport make_report(StudyKind kind, const ManufacturedCase& mc, const StudyOptions& opt) {
  ConvergenceReport r;
  r.kind = kind;
  r.case_name = std::string(case_name(mc.id()));
  r.theta = opt.solver.theta;
  r.flow_boundary = std::string(flow_boundary_name(opt.flow));
  r.params = mc.params();
  return r;
}

std::vector<ConvergenceRow> run_all(const ManufacturedCase& mc, const std::vector<std::pair<int, double>>& jobs,
                                    const StudyOptions& opt) {
  std::vector<ConvergenceRow> rows;
  if (opt.parallel) {
    std::vector<std::future<ConvergenceRow>> futures;
    for (const auto& [n, dt] : jobs)
      futures.push_back(std::async(std::launch::async, [&mc, &opt, n = n, dt = dt] { return run_level(mc, n, dt, opt); }));
    for (auto& f : futures) rows.push_back(f.get());
  } else {
    for (const auto& [n, dt] : jobs) rows.push_back(run_level(mc, n, dt, opt));
  }
  return rows;
}

}  // namespace

ConvergenceReport convergence_study(CaseId id, const std::vector<int>& levels, const StudyOptions& opt) {
  if (levels.empty()) throw InvalidArgument("convergence study needs at least one mesh level");
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (levels[i] != 2 * levels[i - 1]) throw InvalidArgument("mesh levels must double from one row to the next");
  if (opt.dt_rule == DtRule::fixed && !(opt.fixed_dt > 0.0)) throw InvalidArgument("fixed dt rule needs dt > 0");
  const ManufacturedCase mc(id, opt.params.value_or(ManufacturedCase::table_params(id)), opt.law);
  std::vector<std::pair<int, double>> jobs;
  for (int n : levels) {
    const double h = 1.0 / n;
    jobs.emplace_back(n, opt.dt_rule == DtRule::h_squared ? h * h : opt.fixed_dt);
  }
  auto report = make_report(StudyKind::spatial, mc, opt);
  report.rows = run_all(mc, jobs, opt);
  report.compute_orders();
  return report;
}

ConvergenceReport temporal_study(CaseId id, int n, const std::vector<double>& dts, const StudyOptions& opt) {
  if (dts.empty()) throw InvalidArgument("temporal study needs at least one time step");
  for (std::size_t i = 1; i < dts.size(); ++i)
    if (std::abs(dts[i] * 2.0 - dts[i - 1]) > 1e-12 * dts[i - 1])
      throw InvalidArgument("time steps must halve from one row to the next");
  const ManufacturedCase mc(id, opt.params.value_or(ManufacturedCase::table_params(id)), opt.law);
  std::vector<std::pair<int, double>> jobs;
  for (double dt : dts) jobs.emplace_back(n, dt);
  auto report = make_report(StudyKind::temporal, mc, opt);
  report.rows = run_all(mc, jobs, opt);
  report.compute_orders();
  return report;
}

}  // namespace hmporo
