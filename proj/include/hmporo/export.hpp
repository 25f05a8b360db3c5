#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "hmporo/problem.hpp"
#include "hmporo/solver.hpp"

namespace hmporo {

/// Legacy ASCII VTK unstructured grid on the P1 vertex set: vectors u and
/// scalars p, xi, eta as point data (P2 fields sampled at the vertices).
void write_vtk(std::ostream& os, const Mesh& mesh, const DofMap& dofs, const FieldState& state);

/// Columns x, y, u1, u2, p, one row per vertex.
void write_field_csv(std::ostream& os, const Mesh& mesh, const DofMap& dofs, const FieldState& state);

/// Columns step, t, picard_iters, energy, increment.
void write_diagnostics_csv(std::ostream& os, const std::vector<StepDiagnostics>& diagnostics);

/// Writes `content` to `path`; IoError naming the path on failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace hmporo
