#include "meancurv/mesh.hpp"

#include <algorithm>
#include <cstdio>

#include "meancurv/error.hpp"

namespace meancurv {

namespace {

std::string format(const char* fmt, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), fmt, args...);
    return buf;
}

// (j,k) opposite pair of vertex i in face f, following the stored winding.
RingElement opposite_pair(const Tri& f, FaceId fid, VertexId i) {
    if (f[0] == i) return {fid, f[1], f[2]};
    if (f[1] == i) return {fid, f[2], f[0]};
    return {fid, f[0], f[1]};
}

} // namespace

Mesh Mesh::build(std::vector<Vec3> positions, std::vector<Tri> faces) {
    if (positions.empty()) throw Error(ErrorKind::invalid_argument, "mesh has no vertices");

    const auto nv = static_cast<VertexId>(positions.size());
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const Tri& t = faces[f];
        for (int c = 0; c < 3; ++c) {
            if (t[c] >= nv)
                throw Error(ErrorKind::structural,
                            format("face %zu references vertex %u out of range (%u vertices)", f,
                                   t[c], nv));
        }
        if (t[0] == t[1] || t[1] == t[2] || t[2] == t[0])
            throw Error(ErrorKind::structural, format("face %zu repeats a vertex", f));
    }

    Mesh mesh;
    mesh.positions_ = std::move(positions);
    mesh.faces_ = std::move(faces);
    mesh.build_adjacency();
    return mesh;
}

Mesh Mesh::with_positions(std::vector<Vec3> positions) const {
    if (positions.size() != positions_.size())
        throw Error(ErrorKind::invalid_argument,
                    format("position count %zu does not match mesh vertex count %zu",
                           positions.size(), positions_.size()));
    Mesh copy = *this;
    copy.positions_ = std::move(positions);
    return copy;
}

void Mesh::build_adjacency() {
    const auto nv = static_cast<VertexId>(positions_.size());
    const auto nf = static_cast<FaceId>(faces_.size());

    // --- undirected edge map ------------------------------------------------
    struct DirectedEdge {
        VertexId u, v; // u < v
        FaceId face;
        bool forward; // the face traverses u -> v
    };
    std::vector<DirectedEdge> directed;
    directed.reserve(std::size_t{3} * nf);
    for (FaceId f = 0; f < nf; ++f) {
        const Tri& t = faces_[f];
        for (int c = 0; c < 3; ++c) {
            VertexId a = t[c], b = t[(c + 1) % 3];
            directed.push_back(a < b ? DirectedEdge{a, b, f, true} : DirectedEdge{b, a, f, false});
        }
    }
    std::sort(directed.begin(), directed.end(), [](const DirectedEdge& a, const DirectedEdge& b) {
        if (a.u != b.u) return a.u < b.u;
        if (a.v != b.v) return a.v < b.v;
        return a.face < b.face;
    });

    edges_.clear();
    for (std::size_t s = 0; s < directed.size();) {
        std::size_t e = s;
        while (e < directed.size() && directed[e].u == directed[s].u &&
               directed[e].v == directed[s].v)
            ++e;
        Edge edge;
        edge.u = directed[s].u;
        edge.v = directed[s].v;
        const std::size_t count = e - s;
        edge.face[0] = directed[s].face;
        if (count >= 2) edge.face[1] = directed[s + 1].face;
        if (count > 2) {
            edge.over_shared = true;
            ++non_manifold_edges_;
        } else if (count == 1) {
            ++boundary_edges_;
        } else {
            edge.opposed = directed[s].forward != directed[s + 1].forward;
            if (!edge.opposed) ++misoriented_edges_;
        }
        edges_.push_back(edge);
        s = e;
    }

    // --- vertex -> incident faces (CSR, face ids ascending) ------------------
    vf_offsets_.assign(nv + 1, 0);
    for (const Tri& t : faces_)
        for (VertexId v : t) ++vf_offsets_[v + 1];
    for (VertexId v = 0; v < nv; ++v) vf_offsets_[v + 1] += vf_offsets_[v];
    vf_faces_.resize(std::size_t{3} * nf);
    {
        std::vector<std::uint32_t> cursor(vf_offsets_.begin(), vf_offsets_.end() - 1);
        for (FaceId f = 0; f < nf; ++f)
            for (VertexId v : faces_[f]) vf_faces_[cursor[v]++] = f;
    }

    // --- vertex classes and ordered fans -------------------------------------
    vertex_class_.assign(nv, VertexClass::interior);
    std::vector<std::uint8_t> touches_boundary(nv, 0), touches_bad_edge(nv, 0);
    for (const Edge& e : edges_) {
        if (e.over_shared) {
            touches_bad_edge[e.u] = touches_bad_edge[e.v] = 1;
        } else if (e.face[1] == kNoFace) {
            touches_boundary[e.u] = touches_boundary[e.v] = 1;
        }
    }

    ring_offsets_.assign(nv + 1, 0);
    ring_.clear();
    ring_.reserve(std::size_t{3} * nf);
    std::size_t orphan_count = 0;

    auto face_across = [&](VertexId i, VertexId other, FaceId from) -> FaceId {
        const Edge* e = find_edge(i, other);
        if (e == nullptr || e->over_shared) return kNoFace;
        if (e->face[0] == from) return e->face[1];
        return e->face[0];
    };

    std::vector<RingElement> fan;
    for (VertexId i = 0; i < nv; ++i) {
        ring_offsets_[i] = static_cast<std::uint32_t>(ring_.size());
        const auto incident = incident_faces(i);
        if (incident.empty()) {
            vertex_class_[i] = VertexClass::non_manifold;
            ++orphan_count;
            continue;
        }
        if (touches_bad_edge[i]) {
            vertex_class_[i] = VertexClass::non_manifold;
            continue;
        }

        // Walk the fan in both directions from the smallest incident face.
        fan.clear();
        const FaceId start = incident[0];
        const RingElement first = opposite_pair(faces_[start], start, i);
        fan.push_back(first);
        bool closed_fan = false;
        VertexId exit = first.k;
        FaceId prev = start;
        while (true) {
            FaceId next = face_across(i, exit, prev);
            if (next == kNoFace) break;
            if (next == start) {
                closed_fan = true;
                break;
            }
            RingElement el = opposite_pair(faces_[next], next, i);
            exit = (el.j == exit) ? el.k : el.j;
            fan.push_back(el);
            prev = next;
            if (fan.size() > incident.size()) break; // revisit: defect
        }
        if (!closed_fan && fan.size() < incident.size()) {
            std::vector<RingElement> back;
            exit = first.j;
            prev = start;
            while (true) {
                FaceId next = face_across(i, exit, prev);
                if (next == kNoFace || next == start) break;
                RingElement el = opposite_pair(faces_[next], next, i);
                exit = (el.j == exit) ? el.k : el.j;
                back.push_back(el);
                prev = next;
                if (back.size() + fan.size() > incident.size()) break;
            }
            fan.insert(fan.begin(), back.rbegin(), back.rend());
        }

        if (fan.size() != incident.size()) {
            vertex_class_[i] = VertexClass::non_manifold; // disconnected fan
            continue;
        }
        vertex_class_[i] = touches_boundary[i] ? VertexClass::boundary : VertexClass::interior;
        ring_.insert(ring_.end(), fan.begin(), fan.end());
    }
    ring_offsets_[nv] = static_cast<std::uint32_t>(ring_.size());

    if (orphan_count > 0)
        warnings_.push_back(format("%zu vertices have no incident faces", orphan_count));
    if (misoriented_edges_ > 0)
        warnings_.push_back(
            format("inconsistent winding: %zu edges traversed in the same direction by both faces",
                   misoriented_edges_));
    if (non_manifold_edges_ > 0)
        warnings_.push_back(format("%zu edges shared by more than two faces", non_manifold_edges_));
}

const Edge* Mesh::find_edge(VertexId a, VertexId b) const {
    const VertexId u = std::min(a, b), v = std::max(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{u, v},
                               [](const Edge& e, const std::pair<VertexId, VertexId>& key) {
                                   return e.u != key.first ? e.u < key.first : e.v < key.second;
                               });
    if (it == edges_.end() || it->u != u || it->v != v) return nullptr;
    return &*it;
}

std::span<const FaceId> Mesh::incident_faces(VertexId i) const {
    return {vf_faces_.data() + vf_offsets_[i], vf_faces_.data() + vf_offsets_[i + 1]};
}

std::span<const RingElement> Mesh::one_ring_elements(VertexId i) const {
    if (vertex_class_[i] == VertexClass::non_manifold)
        throw Error(ErrorKind::non_manifold, format("vertex %u is non-manifold", i));
    return {ring_.data() + ring_offsets_[i], ring_.data() + ring_offsets_[i + 1]};
}

std::size_t Mesh::count_vertices(VertexClass c) const {
    return static_cast<std::size_t>(std::count(vertex_class_.begin(), vertex_class_.end(), c));
}

double Mesh::total_area() const {
    double area = 0.0;
    for (const Tri& t : faces_)
        area += 0.5 * norm(cross(positions_[t[1]] - positions_[t[0]],
                                 positions_[t[2]] - positions_[t[0]]));
    return area;
}

double Mesh::mean_edge_length() const {
    if (edges_.empty()) return 0.0;
    double total = 0.0;
    for (const Edge& e : edges_) total += distance(positions_[e.u], positions_[e.v]);
    return total / static_cast<double>(edges_.size());
}

double Mesh::signed_volume() const {
    double vol = 0.0;
    for (const Tri& t : faces_)
        vol += dot(positions_[t[0]], cross(positions_[t[1]], positions_[t[2]])) / 6.0;
    return vol;
}

} // namespace meancurv
