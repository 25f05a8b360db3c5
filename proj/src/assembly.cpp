#include "hmporo/assembly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "hmporo/error.hpp"
#include "hmporo/fields.hpp"

namespace hmporo {

namespace {

using Triplet = Eigen::Triplet<double>;

struct LocalMatrices {
  Eigen::Matrix<double, 12, 12> a_uu;  // row/col index c * 6 + i
  Eigen::Matrix<double, 3, 12> b;      // (div v, psi)
  Eigen::Matrix3d mass;
  Eigen::Matrix3d lap;
  Eigen::Matrix<double, 12, 1> load_u;
  Eigen::Vector3d load_eta;  // source and gravity

  void clear() {
    a_uu.setZero();
    b.setZero();
    mass.setZero();
    lap.setZero();
    load_u.setZero();
    load_eta.setZero();
  }
};

// Strain of the vector basis function N_i e_c from its physical gradient.
SymMat2 basis_strain(int c, const Vec2& g) {
  return c == 0 ? SymMat2{g[0], 0.0, 0.5 * g[1]} : SymMat2{0.0, g[1], 0.5 * g[0]};
}

void element_matrices(const Problem& pb, int t, const Eigen::VectorXd& u_frozen, double time, bool want_u,
                      bool want_flow, LocalMatrices& lm) {
  lm.clear();
  const auto& rule = triangle_quadrature(kAssemblyQuadratureDegree);
  const auto local = pb.dofs.element_p2(pb.mesh, t);
  const double k_mu = pb.params.K / pb.params.mu_f;
  const Vec2 gravity(pb.params.rho_f_g[0], pb.params.rho_f_g[1]);

  std::array<Vec2, 6> g2;
  std::array<SymMat2, 12> eps;
  for (const auto& qp : rule.points) {
    const auto map = map_to_physical(pb.mesh, t, qp.ref);
    const double w = qp.weight * std::abs(map.det);
    const auto s2 = p2_basis().evaluate(qp.ref);
    const auto s1 = p1_basis().evaluate(qp.ref);
    std::array<Vec2, 3> g1;
    for (int k = 0; k < 3; ++k) g1[k] = map.inv_transpose * s1.grad[k];

    if (want_u) {
      Mat2 grad_frozen = Mat2::Zero();
      for (int i = 0; i < 6; ++i) {
        g2[i] = map.inv_transpose * s2.grad[i];
        for (int c = 0; c < 2; ++c) grad_frozen.row(c) += u_frozen[c * pb.dofs.scalar_p2 + local[i]] * g2[i].transpose();
      }
      const auto fc = pb.law.frozen(strain_of(grad_frozen));
      for (int c = 0; c < 2; ++c)
        for (int i = 0; i < 6; ++i) eps[c * 6 + i] = basis_strain(c, g2[i]);
      for (int r = 0; r < 12; ++r) {
        const double div_r = g2[r % 6][r / 6];
        for (int s = 0; s < 12; ++s) {
          const double div_s = g2[s % 6][s / 6];
          lm.a_uu(r, s) += w * (fc.mu_tilde * contract(eps[s], eps[r]) + fc.shifted_lambda * div_s * div_r);
        }
        for (int k = 0; k < 3; ++k) lm.b(k, r) += w * div_r * s1.value[k];
      }
      if (pb.forcing.body_force) {
        const Vec2 f = pb.forcing.body_force(map.physical, time);
        for (int c = 0; c < 2; ++c)
          for (int i = 0; i < 6; ++i) lm.load_u[c * 6 + i] += w * f[c] * s2.value[i];
      }
    }
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l) {
        lm.mass(k, l) += w * s1.value[k] * s1.value[l];
        lm.lap(k, l) += w * g1[k].dot(g1[l]);
      }
    if (want_flow) {
      const double src = pb.forcing.source ? pb.forcing.source(map.physical, time) : 0.0;
      for (int k = 0; k < 3; ++k) lm.load_eta[k] += w * (src * s1.value[k] + k_mu * gravity.dot(g1[k]));
    }
  }
}

void check_inputs(const Problem& pb, const StepInputs& in) {
  if (in.theta != 0 && in.theta != 1) throw InvalidArgument("theta must be 0 or 1");
  if (!(in.dt > 0.0)) throw InvalidArgument("time step must be positive");
  const auto& d = pb.dofs;
  if (in.prev.u.size() != 2 * d.scalar_p2 || in.u_frozen.size() != 2 * d.scalar_p2 ||
      in.prev.xi.size() != d.num_vertices || in.prev.eta.size() != d.num_vertices)
    throw InvalidArgument("field state does not match the dof map");
}

std::vector<char> boundary_mask(const Problem& pb, SystemKind kind) {
  const auto& d = pb.dofs;
  const int size = kind == SystemKind::monolithic ? d.total
                   : kind == SystemKind::mechanics ? d.eta_offset
                                                   : d.num_vertices;
  std::vector<char> mask(size, 0);
  if (kind != SystemKind::flow) {
    for (const auto& side : d.p2_boundary)
      for (int s : side)
        for (int c = 0; c < 2; ++c) mask[d.u_dof(c, s)] = 1;
    for (int v : d.boundary_vertices) mask[d.xi_dof(v)] = 1;
  }
  if (kind != SystemKind::mechanics) {
    const int off = kind == SystemKind::flow ? d.eta_offset : 0;
    for (int v : d.boundary_vertices) mask[d.eta_dof(v) - off] = 1;
  }
  return mask;
}

}  // namespace

SparseSystem assemble_unconstrained(const Problem& pb, SystemKind kind, const StepInputs& in,
                                    const Eigen::VectorXd* xi_known) {
  check_inputs(pb, in);
  if (kind == SystemKind::flow && (xi_known == nullptr || xi_known->size() != pb.dofs.num_vertices))
    throw InvalidArgument("flow system needs the new xi values");

  const auto& d = pb.dofs;
  const auto& c = pb.coeffs;
  const double k_mu = pb.params.K / pb.params.mu_f;
  const bool want_u = kind != SystemKind::flow;
  const bool want_flow = kind != SystemKind::mechanics;
  const double theta = kind == SystemKind::mechanics ? 0.0 : static_cast<double>(in.theta);
  const int offset = kind == SystemKind::flow ? d.eta_offset : 0;

  SparseSystem sys;
  sys.kind = kind;
  sys.offset = offset;
  sys.boundary_mask = boundary_mask(pb, kind);
  const int n = static_cast<int>(sys.boundary_mask.size());
  sys.rhs = Eigen::VectorXd::Zero(n);

  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(pb.mesh.num_triangles()) * (want_u ? 260 : 9) + n);
  // Explicit diagonal keeps every row structurally nonsingular for elimination.
  for (int i = 0; i < n; ++i) trip.emplace_back(i, i, 0.0);

  LocalMatrices lm;
  for (int t = 0; t < pb.mesh.num_triangles(); ++t) {
    element_matrices(pb, t, in.u_frozen, in.t_next, want_u, want_flow, lm);
    const auto p2 = d.element_p2(pb.mesh, t);
    const auto& tri = pb.mesh.triangles[t];
    std::array<int, 12> u_glob;
    for (int cc = 0; cc < 2; ++cc)
      for (int i = 0; i < 6; ++i) u_glob[cc * 6 + i] = d.u_dof(cc, p2[i]);

    if (want_u) {
      for (int r = 0; r < 12; ++r) {
        for (int s = 0; s < 12; ++s) trip.emplace_back(u_glob[r], u_glob[s], lm.a_uu(r, s));
        for (int k = 0; k < 3; ++k) {
          trip.emplace_back(u_glob[r], d.xi_dof(tri[k]), -lm.b(k, r));
          trip.emplace_back(d.xi_dof(tri[k]), u_glob[r], lm.b(k, r));
        }
        sys.rhs[u_glob[r]] += lm.load_u[r];
      }
      for (int k = 0; k < 3; ++k) {
        double eta_prev_term = 0.0;
        for (int l = 0; l < 3; ++l) {
          trip.emplace_back(d.xi_dof(tri[k]), d.xi_dof(tri[l]), c.kappa3 * lm.mass(k, l));
          if (theta != 0.0) trip.emplace_back(d.xi_dof(tri[k]), d.eta_dof(tri[l]), -theta * c.kappa1 * lm.mass(k, l));
          eta_prev_term += lm.mass(k, l) * in.prev.eta[tri[l]];
        }
        sys.rhs[d.xi_dof(tri[k])] += (1.0 - theta) * c.kappa1 * eta_prev_term;
      }
    }
    if (want_flow) {
      for (int k = 0; k < 3; ++k) {
        const int row = d.eta_dof(tri[k]) - offset;
        double rhs = lm.load_eta[k];
        for (int l = 0; l < 3; ++l) {
          trip.emplace_back(row, d.eta_dof(tri[l]) - offset,
                            lm.mass(k, l) / in.dt + k_mu * c.kappa2 * lm.lap(k, l));
          rhs += lm.mass(k, l) * in.prev.eta[tri[l]] / in.dt;
          const double coupling = k_mu * c.kappa1 * lm.lap(k, l);
          if (kind == SystemKind::flow) rhs -= coupling * (*xi_known)[tri[l]];
          else trip.emplace_back(row, d.xi_dof(tri[l]), coupling);
        }
        sys.rhs[row] += rhs;
      }
    }
  }

  if (want_u) {
    const Eigen::VectorXd tr = assemble_traction(pb.mesh, d, pb.boundary.traction, in.t_next, pb.boundary.u_dirichlet);
    sys.rhs.segment(d.u_offset, tr.size()) += tr;
  }
  if (want_flow && pb.boundary.flow == FlowBoundary::neumann_flux) {
    const Eigen::VectorXd fl = assemble_flux(pb.mesh, pb.boundary.flux, in.t_next);
    sys.rhs.segment(d.eta_offset - offset, fl.size()) += fl;
  }

  sys.matrix.resize(n, n);
  sys.matrix.setFromTriplets(trip.begin(), trip.end());
  return sys;
}

DirichletValues dirichlet_values(const Problem& pb, SystemKind kind, double t) {
  const auto& d = pb.dofs;
  const auto& bd = pb.boundary;
  std::map<int, double> values;
  if (kind != SystemKind::flow) {
    for (BoundaryTag tag : kAllTags) {
      for (int c = 0; c < 2; ++c) {
        if (!bd.is_dirichlet(tag, c)) continue;
        for (int s : d.p2_boundary[tag_index(tag)]) {
          const double v = bd.u_value ? bd.u_value(d.p2_node_position(pb.mesh, s), t)[c] : 0.0;
          values[d.u_dof(c, s)] = v;
        }
      }
    }
  }
  if (bd.flow == FlowBoundary::dirichlet_xi_eta) {
    const int offset = kind == SystemKind::flow ? d.eta_offset : 0;
    for (int v : d.boundary_vertices) {
      const XiEta xe = bd.xi_eta_value ? bd.xi_eta_value(pb.mesh.vertices[v], t) : XiEta{0.0, 0.0};
      if (kind != SystemKind::flow) values[d.xi_dof(v)] = xe.xi;
      if (kind != SystemKind::mechanics) values[d.eta_dof(v) - offset] = xe.eta;
    }
  }
  return {values.begin(), values.end()};
}

void apply_dirichlet(SparseSystem& sys, const DirichletValues& values) {
  const int n = sys.size();
  std::vector<char> constrained(n, 0);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
  for (const auto& [dof, value] : values) {
    if (dof < 0 || dof >= n || !sys.boundary_mask[dof]) {
      std::ostringstream os;
      os << "Dirichlet value given for dof " << dof << ", which is not a boundary dof";
      throw InvalidArgument(os.str());
    }
    constrained[dof] = 1;
    g[dof] = value;
  }
  for (const auto& [dof, value] : sys.dirichlet) constrained[dof] = 1;
  if (values.empty()) return;

  const auto& a = sys.matrix;
  std::vector<Triplet> trip;
  trip.reserve(a.nonZeros());
  for (int i = 0; i < n; ++i) {
    if (constrained[i]) {
      trip.emplace_back(i, i, 1.0);
      continue;
    }
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(a, i); it; ++it) {
      const int j = static_cast<int>(it.col());
      if (constrained[j]) sys.rhs[i] -= it.value() * g[j];
      else trip.emplace_back(i, j, it.value());
    }
  }
  for (const auto& [dof, value] : values) sys.rhs[dof] = value;

  Eigen::SparseMatrix<double, Eigen::RowMajor> out(n, n);
  out.setFromTriplets(trip.begin(), trip.end());
  sys.matrix = std::move(out);

  std::map<int, double> merged(sys.dirichlet.begin(), sys.dirichlet.end());
  for (const auto& [dof, value] : values) merged[dof] = value;
  sys.dirichlet.assign(merged.begin(), merged.end());
}

SparseSystem assemble_step_system(const Problem& pb, const StepInputs& in) {
  auto sys = assemble_unconstrained(pb, SystemKind::monolithic, in);
  apply_dirichlet(sys, dirichlet_values(pb, SystemKind::monolithic, in.t_next));
  return sys;
}

SparseSystem assemble_mechanics_system(const Problem& pb, const StepInputs& in) {
  auto sys = assemble_unconstrained(pb, SystemKind::mechanics, in);
  apply_dirichlet(sys, dirichlet_values(pb, SystemKind::mechanics, in.t_next));
  return sys;
}

SparseSystem assemble_flow_system(const Problem& pb, const StepInputs& in, const Eigen::VectorXd& xi_next) {
  auto sys = assemble_unconstrained(pb, SystemKind::flow, in, &xi_next);
  apply_dirichlet(sys, dirichlet_values(pb, SystemKind::flow, in.t_next));
  return sys;
}

Eigen::VectorXd assemble_traction(const Mesh& mesh, const DofMap& dofs, const BoundaryVectorField& f1, double t,
                                  const std::array<std::array<bool, 2>, 4>& dirichlet) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(2 * dofs.scalar_p2);
  if (!f1) return out;
  const auto& line = gauss3_line();
  for (const auto& be : mesh.boundary_edges) {
    const auto& fixed = dirichlet[tag_index(be.tag)];
    if (fixed[0] && fixed[1]) continue;
    const auto& ev = mesh.edges[be.edge].vertices;
    const Point2 a = mesh.vertices[ev[0]];
    const Point2 b = mesh.vertices[ev[1]];
    const double len = mesh.edge_length(be.edge);
    const std::array<int, 3> nodes{ev[0], dofs.num_vertices + be.edge, ev[1]};
    const Vec2 normal(be.normal.x, be.normal.y);
    for (int q = 0; q < 3; ++q) {
      const double s = line.s[q];
      const Point2 x{a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)};
      const Vec2 f = f1(x, t, normal);
      const std::array<double, 3> shape{(1.0 - s) * (1.0 - 2.0 * s), 4.0 * s * (1.0 - s), s * (2.0 * s - 1.0)};
      for (int c = 0; c < 2; ++c) {
        if (fixed[c]) continue;  // Dirichlet component: test function vanishes
        for (int i = 0; i < 3; ++i) out[c * dofs.scalar_p2 + nodes[i]] += line.w[q] * len * f[c] * shape[i];
      }
    }
  }
  return out;
}

Eigen::VectorXd assemble_flux(const Mesh& mesh, const BoundaryScalarField& phi1, double t) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(mesh.num_vertices());
  if (!phi1) return out;
  const auto& line = gauss3_line();
  for (const auto& be : mesh.boundary_edges) {
    const auto& ev = mesh.edges[be.edge].vertices;
    const Point2 a = mesh.vertices[ev[0]];
    const Point2 b = mesh.vertices[ev[1]];
    const double len = mesh.edge_length(be.edge);
    const Vec2 normal(be.normal.x, be.normal.y);
    for (int q = 0; q < 3; ++q) {
      const double s = line.s[q];
      const double v = phi1({a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)}, t, normal);
      out[ev[0]] += line.w[q] * len * v * (1.0 - s);
      out[ev[1]] += line.w[q] * len * v * s;
    }
  }
  return out;
}

}  // namespace hmporo
