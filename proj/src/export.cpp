#include "hmporo/export.hpp"

#include <cstdio>
#include <fstream>

#include "hmporo/error.hpp"

namespace hmporo {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

void check_sizes(const DofMap& dofs, const FieldState& s) {
  if (s.u.size() != 2 * dofs.scalar_p2 || s.p.size() != dofs.num_vertices || s.xi.size() != dofs.num_vertices ||
      s.eta.size() != dofs.num_vertices)
    throw InvalidArgument("field state does not match the dof map");
}

void scalars(std::ostream& os, const char* name, const Eigen::VectorXd& v) {
  os << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << num(v[i]) << '\n';
}

}  // namespace

void write_vtk(std::ostream& os, const Mesh& mesh, const DofMap& dofs, const FieldState& s) {
  check_sizes(dofs, s);
  const int nv = mesh.num_vertices();
  const int nt = mesh.num_triangles();
  os << "# vtk DataFile Version 3.0\n"
     << "poroelastic fields at t = " << num(s.t) << "\n"
     << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << nv << " double\n";
  for (const auto& p : mesh.vertices) os << num(p.x) << ' ' << num(p.y) << " 0\n";
  os << "CELLS " << nt << ' ' << 4 * nt << '\n';
  for (const auto& t : mesh.triangles) os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  os << "CELL_TYPES " << nt << '\n';
  for (int t = 0; t < nt; ++t) os << "5\n";
  os << "POINT_DATA " << nv << '\n';
  os << "VECTORS u double\n";
  // Vertex v is scalar P2 node v, so the vertex values are coefficients.
  for (int v = 0; v < nv; ++v) os << num(s.u[dofs.u_dof(0, v)]) << ' ' << num(s.u[dofs.u_dof(1, v)]) << " 0\n";
  scalars(os, "p", s.p);
  scalars(os, "xi", s.xi);
  scalars(os, "eta", s.eta);
}

void write_field_csv(std::ostream& os, const Mesh& mesh, const DofMap& dofs, const FieldState& s) {
  check_sizes(dofs, s);
  os << "x,y,u1,u2,p\n";
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    os << num(mesh.vertices[v].x) << ',' << num(mesh.vertices[v].y) << ',' << num(s.u[dofs.u_dof(0, v)]) << ','
       << num(s.u[dofs.u_dof(1, v)]) << ',' << num(s.p[v]) << '\n';
  }
}

void write_diagnostics_csv(std::ostream& os, const std::vector<StepDiagnostics>& diagnostics) {
  os << "step,t,picard_iters,energy,increment\n";
  for (const auto& d : diagnostics)
    os << d.step << ',' << num(d.t) << ',' << d.picard_iterations << ',' << num(d.energy) << ',' << num(d.increment)
       << '\n';
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace hmporo
