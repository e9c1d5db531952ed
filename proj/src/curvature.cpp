#include "meancurv/curvature.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "meancurv/error.hpp"

namespace meancurv {

namespace {

std::vector<TriangleFrame> face_frames(const Mesh& mesh) {
    std::vector<TriangleFrame> frames;
    frames.reserve(mesh.face_count());
    const auto& pos = mesh.positions();
    for (const Tri& t : mesh.faces())
        frames.push_back(triangle_frame(pos[t[0]], pos[t[1]], pos[t[2]]));
    return frames;
}

std::size_t degenerate_count(const std::vector<TriangleFrame>& frames) {
    std::size_t n = 0;
    for (const TriangleFrame& f : frames) n += f.degenerate ? 1 : 0;
    return n;
}

int corner_of(const Tri& t, VertexId i) {
    if (t[0] == i) return 0;
    return t[1] == i ? 1 : 2;
}

// (length, outward perpendicular) of the edge opposite corner p.
std::pair<double, Vec3> opposite_edge(const TriangleFrame& f, int p) {
    switch (p) {
    case 0: return {f.l_jk, f.t_jk};
    case 1: return {f.l_ki, f.t_ki};
    default: return {f.l_ij, f.t_ij};
    }
}

double cot_at(const TriangleFrame& f, int p) {
    switch (p) {
    case 0: return f.cot_i;
    case 1: return f.cot_j;
    default: return f.cot_k;
    }
}

// Mixed-area piece of the corner p of a non-degenerate frame.
double mixed_piece(const TriangleFrame& f, int p) {
    const bool obtuse_somewhere = f.cot_i < 0.0 || f.cot_j < 0.0 || f.cot_k < 0.0;
    if (!obtuse_somewhere) {
        // Voronoi piece: cotangents pair with the edges incident to the corner.
        switch (p) {
        case 0: return (f.cot_j * f.l_ki * f.l_ki + f.cot_k * f.l_ij * f.l_ij) / 8.0;
        case 1: return (f.cot_k * f.l_ij * f.l_ij + f.cot_i * f.l_jk * f.l_jk) / 8.0;
        default: return (f.cot_i * f.l_jk * f.l_jk + f.cot_j * f.l_ki * f.l_ki) / 8.0;
        }
    }
    const bool obtuse_here = cot_at(f, p) < 0.0;
    return obtuse_here ? f.area / 2.0 : f.area / 4.0;
}

double mixed_area_impl(const Mesh& mesh, VertexId i, const std::vector<TriangleFrame>& frames) {
    double area = 0.0;
    bool any = false;
    for (FaceId face : mesh.incident_faces(i)) {
        const TriangleFrame& f = frames[face];
        if (f.degenerate) continue;
        area += mixed_piece(f, corner_of(mesh.faces()[face], i));
        any = true;
    }
    if (!any) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "vertex %u has no non-degenerate incident face", i);
        throw Error(ErrorKind::degenerate, buf);
    }
    return area;
}

enum class Route { force_balance, cotangent };

CurvatureField assemble(const Mesh& mesh, Route route) {
    const auto frames = face_frames(mesh);
    const auto normals = vertex_normals(mesh);
    const std::size_t nv = mesh.vertex_count();

    CurvatureField out;
    out.hn.assign(nv, Vec3{});
    out.h.assign(nv, 0.0);
    out.mixed_area.assign(nv, 0.0);
    out.valid.assign(nv, 0);
    out.orientation_warning = !mesh.orientation_consistent();
    out.degenerate_faces = degenerate_count(frames);

    std::vector<std::pair<VertexId, double>> link_weights;
    const auto& pos = mesh.positions();
    for (VertexId i = 0; i < nv; ++i) {
        if (mesh.vertex_class(i) != VertexClass::interior) continue;

        double area = 0.0;
        bool any_element = false;
        for (FaceId face : mesh.incident_faces(i)) {
            const TriangleFrame& f = frames[face];
            if (f.degenerate) continue;
            area += mixed_piece(f, corner_of(mesh.faces()[face], i));
            any_element = true;
        }
        if (!any_element || area <= 0.0) continue;
        out.mixed_area[i] = area;

        Vec3 hn;
        if (route == Route::force_balance) {
            // Element route: sum of opposite-edge tension vectors.
            Vec3 sum;
            for (const RingElement& el : mesh.one_ring_elements(i)) {
                const TriangleFrame& f = frames[el.face];
                if (f.degenerate) continue;
                const auto [l, t] = opposite_edge(f, corner_of(mesh.faces()[el.face], i));
                sum += l * t;
            }
            hn = sum * (-1.0 / (4.0 * area));
        } else {
            // Link route: cotangent weights from the two faces flanking each edge.
            link_weights.clear();
            auto add = [&](VertexId n, double w) {
                for (auto& [v, acc] : link_weights) {
                    if (v == n) {
                        acc += w;
                        return;
                    }
                }
                link_weights.emplace_back(n, w);
            };
            for (const RingElement& el : mesh.one_ring_elements(i)) {
                const TriangleFrame& f = frames[el.face];
                if (f.degenerate) continue;
                const int pj = corner_of(mesh.faces()[el.face], el.j);
                const int pk = corner_of(mesh.faces()[el.face], el.k);
                add(el.j, cot_at(f, pk)); // angle opposite edge (i, j) sits at k
                add(el.k, cot_at(f, pj));
            }
            Vec3 sum;
            for (const auto& [n, w] : link_weights) sum += w * (pos[i] - pos[n]);
            hn = sum * (1.0 / (4.0 * area));
        }

        out.hn[i] = hn;
        const double mag = norm(hn);
        out.h[i] = dot(hn, normals[i]) < 0.0 ? -mag : mag;
        out.valid[i] = 1;
    }

    for (VertexId i = 0; i < nv; ++i)
        if (!out.valid[i]) ++out.invalid_vertices;
    return out;
}

} // namespace

Vec3 element_nodal_force(const TriangleFrame& frame, int which_vertex, double gamma) {
    if (frame.degenerate)
        throw Error(ErrorKind::degenerate, "nodal force undefined for degenerate element");
    if (gamma <= 0.0) throw Error(ErrorKind::invalid_argument, "gamma must be positive");
    const auto [l, t] = opposite_edge(frame, which_vertex);
    return t * (-0.5 * gamma * l);
}

NodalForceField nodal_forces(const Mesh& mesh, double gamma) {
    if (gamma <= 0.0) throw Error(ErrorKind::invalid_argument, "gamma must be positive");
    const auto frames = face_frames(mesh);
    const std::size_t nv = mesh.vertex_count();

    NodalForceField out;
    out.gamma = gamma;
    out.force.assign(nv, Vec3{});
    out.valid.assign(nv, 0);
    out.degenerate_faces = degenerate_count(frames);

    for (VertexId i = 0; i < nv; ++i) {
        if (mesh.vertex_class(i) == VertexClass::non_manifold) continue;
        Vec3 sum;
        bool any = false;
        for (const RingElement& el : mesh.one_ring_elements(i)) {
            const TriangleFrame& f = frames[el.face];
            if (f.degenerate) continue;
            const auto [l, t] = opposite_edge(f, corner_of(mesh.faces()[el.face], i));
            sum += l * t;
            any = true;
        }
        if (!any) continue;
        out.force[i] = sum * (-0.5 * gamma);
        out.valid[i] = 1;
    }
    return out;
}

double mixed_area(const Mesh& mesh, VertexId i) {
    return mixed_area_impl(mesh, i, face_frames(mesh));
}

CurvatureField curvature_force_balance(const Mesh& mesh) {
    return assemble(mesh, Route::force_balance);
}

CurvatureField curvature_cotangent(const Mesh& mesh) {
    return assemble(mesh, Route::cotangent);
}

std::vector<Vec3> vertex_normals(const Mesh& mesh) {
    const auto& pos = mesh.positions();
    std::vector<Vec3> normals(mesh.vertex_count());
    for (const Tri& t : mesh.faces()) {
        // Half cross product: face normal weighted by face area.
        const Vec3 an = 0.5 * cross(pos[t[1]] - pos[t[0]], pos[t[2]] - pos[t[0]]);
        for (VertexId v : t) normals[v] += an;
    }
    for (Vec3& n : normals) {
        const double len = norm(n);
        if (len > 0.0) n /= len;
    }
    return normals;
}

PressureField pressure_recovery(const Mesh& mesh, double gamma) {
    const NodalForceField forces = nodal_forces(mesh, gamma);
    const auto normals = vertex_normals(mesh);
    const auto frames = face_frames(mesh);
    const std::size_t nv = mesh.vertex_count();

    PressureField out;
    out.gamma = gamma;
    out.pressure.assign(nv, 0.0);
    out.valid.assign(nv, 0);
    for (VertexId i = 0; i < nv; ++i) {
        if (mesh.vertex_class(i) != VertexClass::interior || !forces.valid[i]) continue;
        if (norm2(normals[i]) == 0.0) continue;
        const double area = mixed_area_impl(mesh, i, frames);
        out.pressure[i] = dot(forces.force[i], normals[i]) / area;
        out.valid[i] = 1;
    }
    return out;
}

} // namespace meancurv
