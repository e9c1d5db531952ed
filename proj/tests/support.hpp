// Shared helpers for the test suites: seeded generators and small numeric
// utilities. Kept independent of the library internals they are used to
// check (oracles build their own geometry).
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "meancurv/vec3.hpp"

namespace testsupport {

using meancurv::Vec3;

inline double to_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * to_unit(rng());
}

inline Vec3 random_point(std::mt19937_64& rng, double half_extent = 1.0) {
    return {uniform(rng, -half_extent, half_extent), uniform(rng, -half_extent, half_extent),
            uniform(rng, -half_extent, half_extent)};
}

// Uniform triangle in [-1,1]^3, rejecting slivers (area below 1e-3 times the
// squared longest edge) so that cotangent magnitudes stay bounded.
inline std::array<Vec3, 3> random_triangle(std::mt19937_64& rng) {
    while (true) {
        const Vec3 a = random_point(rng), b = random_point(rng), c = random_point(rng);
        const double area = 0.5 * norm(cross(b - a, c - a));
        const double longest =
            std::max({norm2(b - a), norm2(c - b), norm2(a - c)});
        if (area > 1e-3 * longest) return {a, b, c};
    }
}

// Rotation matrix from a random unit quaternion.
struct Rotation {
    std::array<std::array<double, 3>, 3> m;

    Vec3 operator()(const Vec3& v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }
};

inline Rotation random_rotation(std::mt19937_64& rng) {
    double q[4];
    double n2 = 0.0;
    do {
        n2 = 0.0;
        for (double& c : q) {
            c = uniform(rng, -1.0, 1.0);
            n2 += c * c;
        }
    } while (n2 < 1e-6 || n2 > 1.0);
    const double n = std::sqrt(n2);
    const double w = q[0] / n, x = q[1] / n, y = q[2] / n, z = q[3] / n;
    Rotation r;
    r.m = {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
            {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
            {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
    return r;
}

inline double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    return v.size() % 2 == 1 ? v[v.size() / 2]
                             : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
}

inline double rel_diff(const Vec3& a, const Vec3& b) {
    const double scale = std::max(norm(a), norm(b));
    return scale > 0.0 ? norm(a - b) / scale : norm(a - b);
}

} // namespace testsupport
