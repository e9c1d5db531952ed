#include "meancurv/shapes.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <utility>

#include "meancurv/error.hpp"

namespace meancurv {

namespace {

constexpr double kPi = std::numbers::pi;

struct ShapeData {
    std::vector<Vec3> positions;
    std::vector<Tri> faces;
    std::vector<double> h_ref;
    std::vector<Vec3> n_ref;
};

void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::invalid_argument, what);
}

ShapeData make_icosphere(const ShapeSpec& s) {
    require(s.radius > 0.0, "icosphere: radius must be positive");
    require(s.level >= 0, "icosphere: subdivision level must be >= 0");
    require(s.level <= 9, "icosphere: subdivision level too large");

    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> unit = {
        {-1, t, 0}, {1, t, 0},   {-1, -t, 0}, {1, -t, 0}, {0, -1, t},  {0, 1, t},
        {0, -1, -t}, {0, 1, -t}, {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1},
    };
    for (Vec3& v : unit) v = normalized(v);
    std::vector<Tri> faces = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
        {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
        {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
    };

    for (int lvl = 0; lvl < s.level; ++lvl) {
        std::map<std::pair<VertexId, VertexId>, VertexId> midpoint;
        auto mid = [&](VertexId a, VertexId b) -> VertexId {
            const auto key = std::minmax(a, b);
            if (auto it = midpoint.find(key); it != midpoint.end()) return it->second;
            const VertexId id = static_cast<VertexId>(unit.size());
            unit.push_back(normalized(unit[a] + unit[b])); // reproject each level
            midpoint.emplace(key, id);
            return id;
        };
        std::vector<Tri> next;
        next.reserve(faces.size() * 4);
        for (const Tri& f : faces) {
            const VertexId a = mid(f[0], f[1]), b = mid(f[1], f[2]), c = mid(f[2], f[0]);
            next.push_back({f[0], a, c});
            next.push_back({f[1], b, a});
            next.push_back({f[2], c, b});
            next.push_back({a, b, c});
        }
        faces = std::move(next);
    }

    ShapeData d;
    d.faces = std::move(faces);
    d.positions.reserve(unit.size());
    d.n_ref = std::move(unit);
    for (const Vec3& n : d.n_ref) d.positions.push_back(s.center + n * s.radius);
    d.h_ref.assign(d.positions.size(), 1.0 / s.radius);
    return d;
}

ShapeData make_uv_sphere(const ShapeSpec& s) {
    require(s.radius > 0.0, "uv_sphere: radius must be positive");
    require(s.res_u >= 3, "uv_sphere: res_u must be >= 3");
    require(s.res_v >= 2, "uv_sphere: res_v must be >= 2");
    const int nu = s.res_u, nv = s.res_v;

    ShapeData d;
    auto push = [&](const Vec3& n) {
        d.positions.push_back(s.center + n * s.radius);
        d.n_ref.push_back(n);
    };
    push({0, 0, 1}); // north pole
    for (int iv = 1; iv < nv; ++iv) {
        const double theta = kPi * iv / nv;
        for (int iu = 0; iu < nu; ++iu) {
            const double phi = 2.0 * kPi * iu / nu;
            push({std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                  std::cos(theta)});
        }
    }
    push({0, 0, -1}); // south pole
    d.h_ref.assign(d.positions.size(), 1.0 / s.radius);

    const auto ring = [&](int iv, int iu) -> VertexId {
        return static_cast<VertexId>(1 + (iv - 1) * nu + (iu % nu));
    };
    const VertexId north = 0, south = static_cast<VertexId>(d.positions.size() - 1);
    for (int iu = 0; iu < nu; ++iu) d.faces.push_back({north, ring(1, iu), ring(1, iu + 1)});
    for (int iv = 1; iv < nv - 1; ++iv) {
        for (int iu = 0; iu < nu; ++iu) {
            const VertexId a = ring(iv, iu), b = ring(iv, iu + 1);
            const VertexId c = ring(iv + 1, iu), e = ring(iv + 1, iu + 1);
            d.faces.push_back({a, c, e});
            d.faces.push_back({a, e, b});
        }
    }
    for (int iu = 0; iu < nu; ++iu)
        d.faces.push_back({south, ring(nv - 1, iu + 1), ring(nv - 1, iu)});
    return d;
}

ShapeData make_torus(const ShapeSpec& s) {
    require(s.radius > 0.0 && s.tube_radius > 0.0, "torus: radii must be positive");
    require(s.radius > s.tube_radius, "torus: center-circle radius must exceed tube radius");
    require(s.res_u >= 3 && s.res_v >= 3, "torus: resolutions must be >= 3");
    const int nu = s.res_u, nv = s.res_v;
    const double R = s.radius, r = s.tube_radius;

    ShapeData d;
    d.positions.reserve(static_cast<std::size_t>(nu) * nv);
    for (int iu = 0; iu < nu; ++iu) {
        const double u = 2.0 * kPi * iu / nu;
        for (int iv = 0; iv < nv; ++iv) {
            const double v = 2.0 * kPi * iv / nv; // v = 0: outer equator
            const Vec3 n{std::cos(v) * std::cos(u), std::cos(v) * std::sin(u), std::sin(v)};
            d.positions.push_back(s.center + Vec3{(R + r * std::cos(v)) * std::cos(u),
                                                  (R + r * std::cos(v)) * std::sin(u),
                                                  r * std::sin(v)});
            d.n_ref.push_back(n);
            d.h_ref.push_back((R + 2.0 * r * std::cos(v)) / (2.0 * r * (R + r * std::cos(v))));
        }
    }
    const auto at = [&](int iu, int iv) -> VertexId {
        return static_cast<VertexId>((iu % nu) * nv + (iv % nv));
    };
    for (int iu = 0; iu < nu; ++iu) {
        for (int iv = 0; iv < nv; ++iv) {
            d.faces.push_back({at(iu, iv), at(iu + 1, iv), at(iu + 1, iv + 1)});
            d.faces.push_back({at(iu, iv), at(iu + 1, iv + 1), at(iu, iv + 1)});
        }
    }
    return d;
}

ShapeData make_plane_grid(const ShapeSpec& s) {
    require(s.level >= 1, "plane_grid: need at least one cell per side");
    require(s.extent > 0.0, "plane_grid: extent must be positive");
    const int n = s.level;

    ShapeData d;
    for (int iy = 0; iy <= n; ++iy)
        for (int ix = 0; ix <= n; ++ix)
            d.positions.push_back(s.center + Vec3{s.extent * ix / n, s.extent * iy / n, 0.0});
    d.h_ref.assign(d.positions.size(), 0.0);
    d.n_ref.assign(d.positions.size(), Vec3{0, 0, 1});

    const auto at = [&](int ix, int iy) -> VertexId {
        return static_cast<VertexId>(iy * (n + 1) + ix);
    };
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            d.faces.push_back({at(ix, iy), at(ix + 1, iy), at(ix + 1, iy + 1)});
            d.faces.push_back({at(ix, iy), at(ix + 1, iy + 1), at(ix, iy + 1)});
        }
    }
    return d;
}

ShapeData make_cylinder(const ShapeSpec& s) {
    require(s.radius > 0.0, "open_cylinder: radius must be positive");
    require(s.extent > 0.0, "open_cylinder: height must be positive");
    require(s.res_u >= 3 && s.res_v >= 1, "open_cylinder: resolutions too small");
    const int nu = s.res_u, nz = s.res_v;

    ShapeData d;
    for (int iz = 0; iz <= nz; ++iz) {
        const double z = s.extent * iz / nz;
        for (int iu = 0; iu < nu; ++iu) {
            const double u = 2.0 * kPi * iu / nu;
            const Vec3 n{std::cos(u), std::sin(u), 0.0};
            d.positions.push_back(s.center + Vec3{s.radius * n.x, s.radius * n.y, z});
            d.n_ref.push_back(n);
            d.h_ref.push_back(1.0 / (2.0 * s.radius));
        }
    }
    const auto at = [&](int iu, int iz) -> VertexId {
        return static_cast<VertexId>(iz * nu + (iu % nu));
    };
    for (int iz = 0; iz < nz; ++iz) {
        for (int iu = 0; iu < nu; ++iu) {
            d.faces.push_back({at(iu, iz), at(iu + 1, iz), at(iu + 1, iz + 1)});
            d.faces.push_back({at(iu, iz), at(iu + 1, iz + 1), at(iu, iz + 1)});
        }
    }
    return d;
}

// Uniform double in [0, 1) from the top 53 bits; keeps jitter identical
// across standard library implementations.
double to_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

} // namespace

GeneratedShape generate(const ShapeSpec& spec) {
    ShapeData d;
    switch (spec.kind) {
    case ShapeKind::icosphere: d = make_icosphere(spec); break;
    case ShapeKind::uv_sphere: d = make_uv_sphere(spec); break;
    case ShapeKind::torus: d = make_torus(spec); break;
    case ShapeKind::plane_grid: d = make_plane_grid(spec); break;
    case ShapeKind::open_cylinder: d = make_cylinder(spec); break;
    default: throw Error(ErrorKind::invalid_argument, "unknown shape kind");
    }
    GeneratedShape out{Mesh::build(std::move(d.positions), std::move(d.faces)),
                       std::move(d.h_ref), std::move(d.n_ref)};
    return out;
}

Mesh jitter_tangential(const Mesh& mesh, double amplitude, std::uint64_t seed) {
    if (amplitude < 0.0)
        throw Error(ErrorKind::invalid_argument, "jitter amplitude must be >= 0");
    if (amplitude == 0.0) return mesh;

    // Shortest incident edge per vertex; vertices without edges keep infinity
    // and are skipped below via their zero normal.
    std::vector<double> min_edge(mesh.vertex_count(), 0.0);
    for (const Edge& e : mesh.edges()) {
        const double l = distance(mesh.positions()[e.u], mesh.positions()[e.v]);
        for (VertexId v : {e.u, e.v})
            if (min_edge[v] == 0.0 || l < min_edge[v]) min_edge[v] = l;
    }

    // Area-weighted vertex normals define the tangent planes.
    std::vector<Vec3> normals(mesh.vertex_count());
    for (const Tri& t : mesh.faces()) {
        const Vec3 an = cross(mesh.positions()[t[1]] - mesh.positions()[t[0]],
                              mesh.positions()[t[2]] - mesh.positions()[t[0]]);
        for (VertexId v : t) normals[v] += an;
    }

    std::mt19937_64 rng(seed);
    std::vector<Vec3> moved = mesh.positions();
    for (std::size_t i = 0; i < moved.size(); ++i) {
        const double phi = 2.0 * kPi * to_unit(rng());
        const double mag = amplitude * min_edge[i] * to_unit(rng());
        const double nlen = norm(normals[i]);
        if (nlen == 0.0) continue;
        const Vec3 n = normals[i] / nlen;
        // Tangent basis from the axis least aligned with n.
        const Vec3 axis = std::abs(n.x) <= std::abs(n.y)
                              ? (std::abs(n.x) <= std::abs(n.z) ? Vec3{1, 0, 0} : Vec3{0, 0, 1})
                              : (std::abs(n.y) <= std::abs(n.z) ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
        const Vec3 t1 = normalized(cross(n, axis));
        const Vec3 t2 = cross(n, t1);
        moved[i] += mag * (std::cos(phi) * t1 + std::sin(phi) * t2);
    }
    return mesh.with_positions(std::move(moved));
}

} // namespace meancurv
