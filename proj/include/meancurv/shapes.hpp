#pragma once

#include <cstdint>
#include <vector>

#include "meancurv/mesh.hpp"
#include "meancurv/vec3.hpp"

namespace meancurv {

enum class ShapeKind : std::uint8_t {
    icosphere,     // subdivided icosahedron, midpoints reprojected
    uv_sphere,     // lat-long sphere; thin triangles near the poles
    torus,         // v = 0 on the outer equator
    plane_grid,    // z = 0 square grid, open boundary
    open_cylinder, // open ends, boundary rims
};

struct ShapeSpec {
    ShapeKind kind = ShapeKind::icosphere;
    double radius = 1.0;      // sphere/cylinder radius, torus center-circle radius
    double tube_radius = 0.25; // torus only; requires radius > tube_radius
    int level = 0;            // icosphere subdivision / plane grid cells per side
    int res_u = 32;           // uv_sphere, torus, cylinder around
    int res_v = 16;           // uv_sphere, torus rings, cylinder height segments
    double extent = 1.0;      // plane side length / cylinder height
    Vec3 center;
};

/// Generated mesh plus its analytic per-vertex reference (mean curvature
/// h_ref and outward unit normal n_ref, evaluated at the vertex position).
/// Closed shapes are outward oriented; plane and cylinder have boundary.
struct GeneratedShape {
    Mesh mesh;
    std::vector<double> h_ref;
    std::vector<Vec3> n_ref;
};

/// Throws Error(invalid_argument) on bad parameters (radii <= 0,
/// torus radius <= tube_radius, level < 0, resolution < 3).
GeneratedShape generate(const ShapeSpec& spec);

/// Displaces each vertex inside its tangent plane (area-weighted vertex
/// normal) by a seeded uniform amount of at most `amplitude` times the
/// shortest incident edge. Boundary and non-manifold vertices are moved
/// too; vertices without incident faces stay put. Deterministic across
/// platforms for a given seed.
Mesh jitter_tangential(const Mesh& mesh, double amplitude, std::uint64_t seed);

} // namespace meancurv
