#include "meancurv/triangle.hpp"

#include <algorithm>
#include <cmath>

#include "meancurv/error.hpp"

namespace meancurv {

namespace {

// In-plane unit perpendicular of edge (a,b), pointing away from the opposite
// vertex `c`: negated component of (c - a) orthogonal to the edge.
Vec3 outward_edge_perp(const Vec3& a, const Vec3& b, const Vec3& c) {
    const Vec3 e = b - a;
    const Vec3 w = c - a;
    const Vec3 reject = w - e * (dot(w, e) / dot(e, e));
    return -normalized(reject);
}

} // namespace

TriangleFrame triangle_frame(const Vec3& x_i, const Vec3& x_j, const Vec3& x_k) {
    TriangleFrame f;
    f.l_ij = distance(x_i, x_j);
    f.l_jk = distance(x_j, x_k);
    f.l_ki = distance(x_k, x_i);

    const Vec3 e_ij = x_j - x_i;
    const Vec3 e_ik = x_k - x_i;
    const double twice_area = norm(cross(e_ij, e_ik));
    f.area = 0.5 * twice_area;

    const double longest = std::max({f.l_ij, f.l_jk, f.l_ki});
    if (f.area <= kDegenerateAreaFactor * longest * longest) {
        f.degenerate = true;
        return f;
    }

    // Same |cross| at every corner; only the dot product changes.
    const double dot_i = dot(e_ij, e_ik);
    const double dot_j = dot(x_i - x_j, x_k - x_j);
    const double dot_k = dot(x_i - x_k, x_j - x_k);
    f.alpha_i = std::atan2(twice_area, dot_i);
    f.alpha_j = std::atan2(twice_area, dot_j);
    f.alpha_k = std::atan2(twice_area, dot_k);
    f.cot_i = dot_i / twice_area;
    f.cot_j = dot_j / twice_area;
    f.cot_k = dot_k / twice_area;

    f.t_ij = outward_edge_perp(x_i, x_j, x_k);
    f.t_jk = outward_edge_perp(x_j, x_k, x_i);
    f.t_ki = outward_edge_perp(x_k, x_i, x_j);
    return f;
}

Vec3 foot_of_altitude(const Vec3& x_i, const Vec3& x_j, const Vec3& x_k) {
    const Vec3 base = x_k - x_j;
    const double len2 = dot(base, base);
    const double longest2 = std::max({len2, norm2(x_i - x_j), norm2(x_i - x_k)});
    if (len2 <= kDegenerateAreaFactor * kDegenerateAreaFactor * longest2 || len2 == 0.0)
        throw Error(ErrorKind::degenerate, "foot of altitude: base edge collapsed");
    return x_j + base * (dot(x_i - x_j, base) / len2);
}

Vec3 edge_perp_cotangent_form(const TriangleFrame& frame, const Vec3& x_i, const Vec3& x_j,
                              const Vec3& x_k) {
    if (frame.degenerate)
        throw Error(ErrorKind::degenerate, "edge perpendicular undefined for degenerate element");
    return (frame.cot_k * (x_j - x_i) + frame.cot_j * (x_k - x_i)) / frame.l_jk;
}

} // namespace meancurv
