#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "meancurv/curvature.hpp"
#include "meancurv/mesh.hpp"

namespace meancurv {

/// Raw parse result; feed into Mesh::build.
struct ParsedMesh {
    std::vector<Vec3> positions;
    std::vector<Tri> faces;
    std::vector<std::string> warnings; // fan-triangulated polygons etc.
};

/// Wavefront OBJ subset: `v x y z` and `f a b c ...` (1-based; /vt/vn
/// suffixes stripped; polygons fan-triangulated with a warning; unknown
/// directives ignored). Throws Error(parse) with the line number on
/// malformed numbers, Error(structural) on index 0 / out of range.
ParsedMesh read_obj(std::istream& in);

/// OFF: header, counts line, vertex lines, count-prefixed face lines.
/// Polygons fan-triangulated with a warning. Throws Error(structural) on
/// count mismatch or truncation, naming the missing section.
ParsedMesh read_off(std::istream& in);

/// Dispatch by extension (.obj / .off, case-insensitive).
/// Throws Error(io) when the file cannot be opened.
ParsedMesh read_mesh_file(const std::string& path);

/// Writers use 17 significant digits; write-then-read round-trips positions
/// bit-exactly and faces identically.
void write_obj(std::ostream& out, const Mesh& mesh);
void write_off(std::ostream& out, const Mesh& mesh);
void write_mesh_file(const std::string& path, const Mesh& mesh);

/// Optional per-vertex analytic reference for report error columns.
struct ReportReference {
    const std::vector<double>* h_ref = nullptr;
};

/// CSV rows ordered by vertex index:
///   vertex,x,y,z,Hn_x,Hn_y,Hn_z,H,A_mixed,valid[,H_ref,abs_error,rel_error]
/// Invalid vertices print valid=false with empty curvature fields.
void write_report(std::ostream& out, const Mesh& mesh, const CurvatureField& field,
                  const ReportReference& ref = {});

} // namespace meancurv
