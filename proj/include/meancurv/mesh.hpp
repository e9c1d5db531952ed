#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "meancurv/vec3.hpp"

namespace meancurv {

using VertexId = std::uint32_t;
using FaceId = std::uint32_t;
using Tri = std::array<VertexId, 3>;

constexpr std::uint32_t kNoFace = 0xffffffffu;

enum class VertexClass : std::uint8_t {
    interior,     // closed fan, every incident edge has two faces
    boundary,     // at least one incident edge has exactly one face
    non_manifold, // edge with >2 faces, disconnected fan, or no incident faces
};

/// Undirected edge record. `face` holds the one or two incident faces
/// (kNoFace when absent); `over_shared` is true when more than two faces
/// meet at the edge.
struct Edge {
    VertexId u = 0; // u < v
    VertexId v = 0;
    std::array<FaceId, 2> face = {kNoFace, kNoFace};
    bool over_shared = false;
    bool opposed = true; // directed occurrences run in opposite order in the two faces
};

/// One entry of a vertex's ordered one-ring: the incident face and its
/// opposite edge (j,k), ordered so that (i,j,k) matches the stored winding.
struct RingElement {
    FaceId face = 0;
    VertexId j = 0;
    VertexId k = 0;
};

/// Indexed triangle mesh with eagerly built adjacency.
///
/// Faces are stored exactly as given; winding is never repaired. Orientation
/// consistency (every interior edge appearing in opposite directed order in
/// its two faces) is checked at build time and reported through
/// orientation_consistent(); curvature signs are meaningful only when it
/// holds. The mesh is immutable after build; all queries are pure reads.
class Mesh {
public:
    /// Validates indices, builds edge map, vertex classes and ordered
    /// one-ring fans. Throws Error(structural) on out-of-range or repeated
    /// face indices, Error(invalid_argument) on empty positions.
    static Mesh build(std::vector<Vec3> positions, std::vector<Tri> faces);

    /// Same topology with replaced positions (adjacency untouched).
    Mesh with_positions(std::vector<Vec3> positions) const;

    const std::vector<Vec3>& positions() const { return positions_; }
    const std::vector<Tri>& faces() const { return faces_; }
    std::size_t vertex_count() const { return positions_.size(); }
    std::size_t face_count() const { return faces_.size(); }

    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    /// Binary search in the sorted edge list; nullptr when (a,b) is not an edge.
    const Edge* find_edge(VertexId a, VertexId b) const;

    VertexClass vertex_class(VertexId i) const { return vertex_class_[i]; }

    /// Incident faces of a vertex, sorted by face id.
    std::span<const FaceId> incident_faces(VertexId i) const;

    /// Ordered one-ring elements of vertex i. Interior vertices yield a
    /// closed fan (element t shares neighbor k with element t+1's j up to
    /// winding); boundary vertices an open fan from one boundary edge to the
    /// other. Throws Error(non_manifold) naming the vertex.
    std::span<const RingElement> one_ring_elements(VertexId i) const;

    bool orientation_consistent() const { return misoriented_edges_ == 0; }
    std::size_t misoriented_edge_count() const { return misoriented_edges_; }
    bool closed() const { return boundary_edges_ == 0 && non_manifold_edges_ == 0; }
    std::size_t boundary_edge_count() const { return boundary_edges_; }
    std::size_t non_manifold_edge_count() const { return non_manifold_edges_; }
    std::size_t count_vertices(VertexClass c) const;

    /// Build-time observations (orphan vertices, winding, ...), one line each.
    const std::vector<std::string>& warnings() const { return warnings_; }

    double total_area() const;
    double mean_edge_length() const;
    /// Divergence-theorem volume; meaningful for closed, consistently
    /// oriented meshes.
    double signed_volume() const;

private:
    Mesh() = default;
    void build_adjacency();

    std::vector<Vec3> positions_;
    std::vector<Tri> faces_;

    std::vector<Edge> edges_; // sorted by (u,v)
    std::vector<std::uint32_t> vf_offsets_;
    std::vector<FaceId> vf_faces_;
    std::vector<std::uint32_t> ring_offsets_;
    std::vector<RingElement> ring_;
    std::vector<VertexClass> vertex_class_;
    std::size_t boundary_edges_ = 0;
    std::size_t non_manifold_edges_ = 0;
    std::size_t misoriented_edges_ = 0;
    std::vector<std::string> warnings_;
};

} // namespace meancurv
