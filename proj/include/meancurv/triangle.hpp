#pragma once

#include "meancurv/vec3.hpp"

namespace meancurv {

/// A triangle is treated as degenerate when area < kDegenerateAreaFactor *
/// (longest edge)^2. Degenerate elements are excluded from curvature sums
/// and counted in diagnostics; cotangents are never clamped.
constexpr double kDegenerateAreaFactor = 1e-12;

/// Per-element geometric bundle for the triangle (x_i, x_j, x_k).
///
/// t_ij, t_jk, t_ki are unit vectors in the triangle plane, perpendicular to
/// the named edge and pointing away from the opposite vertex. Only valid for
/// non-degenerate triangles.
struct TriangleFrame {
    double l_ij = 0, l_jk = 0, l_ki = 0;          // edge lengths
    double alpha_i = 0, alpha_j = 0, alpha_k = 0; // interior angles (rad)
    double cot_i = 0, cot_j = 0, cot_k = 0;
    double area = 0;
    Vec3 t_ij, t_jk, t_ki;
    bool degenerate = false;
};

/// Computes the frame. Angles use atan2(|cross|, dot); cotangents are
/// dot/|cross| directly. Degenerate input yields frame.degenerate = true
/// with lengths/area still filled (angles and t vectors unreliable).
TriangleFrame triangle_frame(const Vec3& x_i, const Vec3& x_j, const Vec3& x_k);

/// Orthogonal projection of x_i onto the infinite line through x_j, x_k.
/// For an obtuse angle at j or k the foot lies outside the segment.
/// Throws Error(degenerate) when the base edge collapses.
Vec3 foot_of_altitude(const Vec3& x_i, const Vec3& x_j, const Vec3& x_k);

/// Cotangent form of the outward edge perpendicular of edge (j,k):
///   [cot(alpha_k) (x_j - x_i) + cot(alpha_j) (x_k - x_i)] / l_jk
/// Equal to t_jk (the foot-of-altitude construction) for every
/// non-degenerate triangle; kept as an independent route for that
/// cross-check. Throws Error(degenerate) on degenerate frames.
Vec3 edge_perp_cotangent_form(const TriangleFrame& frame, const Vec3& x_i, const Vec3& x_j,
                              const Vec3& x_k);

} // namespace meancurv
