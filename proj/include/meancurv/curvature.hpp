#pragma once

#include <cstdint>
#include <vector>

#include "meancurv/mesh.hpp"
#include "meancurv/triangle.hpp"
#include "meancurv/vec3.hpp"

namespace meancurv {

/// Per-vertex surface-tension nodal forces for tension gamma.
///
/// The element nodal force at vertex i of element E_ijk is the end-point
/// lumping of the uniform edge tension, (gamma/2)(l_ki t_ki + l_ij t_ij),
/// which simplifies to -(gamma/2) l_jk t_jk by the closed-polygon identity.
/// F_i sums these over the one-ring. On a convex closed surface F_i points
/// outward: it is the force the interior pressure must supply at the vertex,
/// F_i ~ 2 gamma H A_i n.
struct NodalForceField {
    double gamma = 1.0;
    std::vector<Vec3> force;
    std::vector<std::uint8_t> valid; // false: boundary / non-manifold / all-degenerate ring
    std::size_t degenerate_faces = 0;
};

/// Per-vertex mean-curvature data from either estimator.
///
/// H is signed against the area-weighted vertex normal: convex regions of an
/// outward-oriented closed mesh have H > 0. When the mesh winding is
/// inconsistent, orientation_warning is set: magnitudes remain valid, signs
/// are unreliable.
struct CurvatureField {
    std::vector<Vec3> hn;            // mean-curvature normal, 1/length
    std::vector<double> h;           // signed scalar mean curvature
    std::vector<double> mixed_area;  // modified Voronoi area, length^2
    std::vector<std::uint8_t> valid;
    bool orientation_warning = false;
    std::size_t degenerate_faces = 0;
    std::size_t invalid_vertices = 0;
};

/// Nodal force of one element at the vertex opposite edge (j,k):
///   -(gamma/2) l_jk t_jk
/// which_vertex selects i (0), j (1) or k (2) of the frame's triangle.
/// Throws Error(degenerate) on degenerate frames.
Vec3 element_nodal_force(const TriangleFrame& frame, int which_vertex, double gamma);

/// One-ring sums of element nodal forces. Invalid vertices carry zero force
/// and a cleared flag; degenerate elements are skipped and counted.
NodalForceField nodal_forces(const Mesh& mesh, double gamma);

/// Modified Voronoi (mixed) area of vertex i: per incident face,
/// the Voronoi piece (cot(a_j)|x_k-x_i|^2 + cot(a_k)|x_j-x_i|^2)/8 when no
/// angle is obtuse, area/2 when obtuse at i, area/4 when obtuse at j or k.
/// These pieces partition each face exactly. Throws Error(non_manifold) on
/// non-manifold vertices, Error(degenerate) when every incident face is
/// degenerate.
double mixed_area(const Mesh& mesh, VertexId i);

/// Force-balance estimator (element route):
///   Hn_i = -(1 / (4 A_i)) * sum over one-ring elements of l_jk t_jk,
/// i.e. nodal_forces with gamma = 1 divided by 2 A_i.
CurvatureField curvature_force_balance(const Mesh& mesh);

/// Cotangent (Laplace-Beltrami) estimator (link route):
///   Hn_i = (1 / (4 A_i)) * sum over neighbors j of
///          (cot beta_ij + cot theta_ij)(x_i - x_j),
/// beta/theta being the angles opposite edge (i,j) in its two faces.
/// Algebraically identical to the force-balance estimator on any mesh.
CurvatureField curvature_cotangent(const Mesh& mesh);

/// Area-weighted average of incident face normals, normalized. Zero vector
/// for vertices with no usable incident face.
std::vector<Vec3> vertex_normals(const Mesh& mesh);

struct PressureField {
    double gamma = 1.0;
    std::vector<double> pressure; // estimated P_in - P_out, ~ 2 gamma H
    std::vector<std::uint8_t> valid;
};

/// Young-Laplace recovery: (F_i . n_i) / A_i per vertex.
PressureField pressure_recovery(const Mesh& mesh, double gamma);

} // namespace meancurv
