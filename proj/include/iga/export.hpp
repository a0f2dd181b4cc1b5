#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "iga/geometry.hpp"

namespace iga {

/// Physical knot-line and patch-boundary polylines of the mesh, each knot
/// line sampled at 16 points per span.
std::vector<std::vector<Vec2>> mesh_polylines(const MultiPatch& mp);

/// CSV segments "x0,y0,x1,y1", one chained segment per line.
void export_mesh_segments(const MultiPatch& mp, std::ostream& os);

/// Legacy ASCII VTK unstructured grid of the same polylines.
void export_mesh_vtk(const MultiPatch& mp, std::ostream& os);

/// Writes <path_base>.csv and <path_base>.vtk.
void export_mesh(const MultiPatch& mp, const std::string& path_base);

}  // namespace iga
