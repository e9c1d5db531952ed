#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "meancurv/curvature.hpp"
#include "meancurv/error.hpp"
#include "meancurv/shapes.hpp"
#include "support.hpp"

using namespace meancurv;
using testsupport::median;
using testsupport::random_rotation;
using testsupport::random_triangle;
using testsupport::rel_diff;

namespace {

// Regular tetrahedron inscribed in the unit sphere. Closed-form oracle:
// with all faces equilateral and the one-ring sum collapsing to 4 x_i,
// Hn_i = (2 cot60 * 4 x_i) / (4 A_face) = x_i exactly, so |H| = 1 = 1/R.
Mesh unit_tetrahedron() {
    const double s = 1.0 / std::sqrt(3.0);
    return Mesh::build({{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}},
                       {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}});
}

GeneratedShape icosphere(int level, double radius = 1.0) {
    return generate({.kind = ShapeKind::icosphere, .radius = radius, .level = level});
}

// Independent per-element oracle: evaluate the two-edge-end lumping directly
// from the corner positions (the un-simplified force expression).
Vec3 edge_end_sum_force(const Vec3& x_i, const Vec3& x_j, const Vec3& x_k, double gamma) {
    const TriangleFrame f = triangle_frame(x_i, x_j, x_k);
    return 0.5 * gamma * (f.l_ki * f.t_ki + f.l_ij * f.t_ij);
}

} // namespace

TEST_CASE("element nodal force") {
    const Vec3 apex{0.5, std::sqrt(3.0) / 2.0, 0.0};
    const TriangleFrame eq = triangle_frame(apex, {0, 0, 0}, {1, 0, 0});

    SUBCASE("equilateral side 1: half the opposite-edge tension, toward the vertex") {
        const Vec3 f = element_nodal_force(eq, 0, 1.0);
        CHECK(std::abs(norm(f) - 0.5) < 1e-14);
        const Vec3 from_mid = normalized(apex - Vec3{0.5, 0.0, 0.0});
        CHECK(norm(normalized(f) - from_mid) < 1e-14);
    }
    SUBCASE("equals the two-edge-end lumping (dual route)") {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 200; ++trial) {
            const auto [a, b, c] = random_triangle(rng);
            const TriangleFrame f = triangle_frame(a, b, c);
            const Vec3 simplified = element_nodal_force(f, 0, 1.7);
            const Vec3 lumped = edge_end_sum_force(a, b, c, 1.7);
            CHECK(rel_diff(simplified, lumped) < 1e-12);
        }
    }
    SUBCASE("three forces sum to zero") {
        std::mt19937_64 rng(8);
        for (int trial = 0; trial < 200; ++trial) {
            const auto [a, b, c] = random_triangle(rng);
            const TriangleFrame f = triangle_frame(a, b, c);
            const Vec3 total = element_nodal_force(f, 0, 2.0) + element_nodal_force(f, 1, 2.0) +
                               element_nodal_force(f, 2, 2.0);
            CHECK(norm(total) < 1e-12 * 2.0 * (f.l_ij + f.l_jk + f.l_ki));
        }
    }
    SUBCASE("right isoceles, legs 1, apex, gamma = 2") {
        // hand evaluation of the end-point lumping: (-1, -1, 0), magnitude sqrt 2
        const TriangleFrame f = triangle_frame({0, 0, 0}, {1, 0, 0}, {0, 1, 0});
        const Vec3 force = element_nodal_force(f, 0, 2.0);
        CHECK(norm(force - Vec3{-1.0, -1.0, 0.0}) < 1e-14);
        CHECK(std::abs(norm(force) - std::sqrt(2.0)) < 1e-14);
    }
    SUBCASE("degenerate element and bad gamma throw") {
        const TriangleFrame bad = triangle_frame({0, 0, 0}, {1, 0, 0}, {2, 0, 0});
        CHECK_THROWS_AS(element_nodal_force(bad, 0, 1.0), Error);
        CHECK_THROWS_AS(element_nodal_force(eq, 0, 0.0), Error);
    }
}

TEST_CASE("nodal force field") {
    SUBCASE("regular tetrahedron: equal magnitudes along the vertex radial") {
        const Mesh m = unit_tetrahedron();
        const NodalForceField f = nodal_forces(m, 1.0);
        // closed form: F_i = 2 gamma A_mixed Hn = (4/sqrt 3) x_i, outward
        const double expected = 4.0 / std::sqrt(3.0);
        for (VertexId i = 0; i < 4; ++i) {
            REQUIRE(f.valid[i]);
            CHECK(std::abs(norm(f.force[i]) - expected) < 1e-13);
            CHECK(norm(normalized(f.force[i]) - normalized(m.positions()[i])) < 1e-13);
        }
    }
    SUBCASE("flat symmetric fan: zero force at the interior vertex") {
        const GeneratedShape plane = generate({.kind = ShapeKind::plane_grid, .level = 2});
        const NodalForceField f = nodal_forces(plane.mesh, 3.0);
        for (VertexId i = 0; i < plane.mesh.vertex_count(); ++i) {
            if (plane.mesh.vertex_class(i) != VertexClass::interior) continue;
            CHECK(norm(f.force[i]) < 1e-12);
        }
    }
    SUBCASE("icosphere: tension-balancing force points outward") {
        const GeneratedShape s = icosphere(2);
        const NodalForceField f = nodal_forces(s.mesh, 1.0);
        for (VertexId i = 0; i < s.mesh.vertex_count(); ++i) {
            REQUIRE(f.valid[i]);
            CHECK(dot(f.force[i], s.n_ref[i]) > 0.0);
        }
    }
    SUBCASE("global force closure") {
        for (const GeneratedShape& s :
             {icosphere(3), generate({.kind = ShapeKind::torus, .radius = 2.0,
                                      .tube_radius = 0.5, .res_u = 32, .res_v = 16})}) {
            const double gamma = 2.5;
            const NodalForceField f = nodal_forces(s.mesh, gamma);
            Vec3 total;
            double edge_total = 0.0;
            for (const Edge& e : s.mesh.edges())
                edge_total += distance(s.mesh.positions()[e.u], s.mesh.positions()[e.v]);
            for (const Vec3& v : f.force) total += v;
            CHECK(norm(total) < 1e-10 * gamma * edge_total);
        }
    }
    SUBCASE("gamma scales the field linearly") {
        const GeneratedShape s = icosphere(1);
        const NodalForceField f1 = nodal_forces(s.mesh, 1.0);
        const NodalForceField f5 = nodal_forces(s.mesh, 5.0);
        for (VertexId i = 0; i < s.mesh.vertex_count(); ++i)
            CHECK(rel_diff(f5.force[i], 5.0 * f1.force[i]) < 1e-15);
    }
}

TEST_CASE("mixed area") {
    SUBCASE("equilateral face contributes area/3 to each corner") {
        const Mesh m = Mesh::build({{0.5, std::sqrt(3.0) / 2.0, 0.0}, {0, 0, 0}, {1, 0, 0}},
                                   {{0, 1, 2}});
        for (VertexId i = 0; i < 3; ++i)
            CHECK(std::abs(mixed_area(m, i) - std::sqrt(3.0) / 12.0) < 1e-15);
    }
    SUBCASE("right angle at the corner: both branches give area/2") {
        // legs 1, area 1/2: Voronoi evaluation (cot pi/4 * 1 + cot pi/4 * 1)/8 = 1/4
        const Mesh m = Mesh::build({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}});
        CHECK(std::abs(mixed_area(m, 0) - 0.25) < 1e-15);
    }
    SUBCASE("obtuse triangle: fixed fractions") {
        // obtuse at vertex 1; area = 0.5 * base 2 * height 0.3 = 0.3
        const Mesh m = Mesh::build({{0, 0, 0}, {1, 0.3, 0}, {2, 0, 0}}, {{0, 1, 2}});
        const TriangleFrame f =
            triangle_frame(m.positions()[0], m.positions()[1], m.positions()[2]);
        REQUIRE(f.cot_j < 0.0); // obtuse where expected
        CHECK(std::abs(mixed_area(m, 1) - f.area / 2.0) < 1e-15);
        CHECK(std::abs(mixed_area(m, 0) - f.area / 4.0) < 1e-15);
        CHECK(std::abs(mixed_area(m, 2) - f.area / 4.0) < 1e-15);
    }
    SUBCASE("mixed areas partition the total area exactly") {
        const GeneratedShape shapes[] = {
            icosphere(3),
            generate({.kind = ShapeKind::uv_sphere, .radius = 1.5, .res_u = 32, .res_v = 16}),
            generate({.kind = ShapeKind::torus, .radius = 2.0, .tube_radius = 0.5,
                      .res_u = 64, .res_v = 32}),
            generate({.kind = ShapeKind::plane_grid, .level = 8}),
        };
        for (const GeneratedShape& s : shapes) {
            double sum = 0.0;
            for (VertexId i = 0; i < s.mesh.vertex_count(); ++i) sum += mixed_area(s.mesh, i);
            CHECK(std::abs(sum - s.mesh.total_area()) < 1e-12 * s.mesh.total_area());
        }
    }
    SUBCASE("no usable incident face throws") {
        const Mesh degenerate = Mesh::build({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}, {{0, 1, 2}});
        CHECK_THROWS_AS(mixed_area(degenerate, 0), Error);
    }
}

TEST_CASE("curvature estimators on closed-form meshes") {
    SUBCASE("unit-circumradius tetrahedron: Hn = x_i exactly") {
        const Mesh m = unit_tetrahedron();
        for (const CurvatureField& field : {curvature_force_balance(m), curvature_cotangent(m)}) {
            for (VertexId i = 0; i < 4; ++i) {
                REQUIRE(field.valid[i]);
                CHECK(norm(field.hn[i] - m.positions()[i]) < 1e-13);
                CHECK(std::abs(field.h[i] - 1.0) < 1e-13);
            }
        }
    }
    SUBCASE("icosahedron on the unit sphere: |Hn| = 1 exactly") {
        const GeneratedShape s = icosphere(0);
        const CurvatureField field = curvature_force_balance(s.mesh);
        for (VertexId i = 0; i < 12; ++i) {
            CHECK(std::abs(field.h[i] - 1.0) < 1e-13);
            CHECK(norm(field.hn[i] - s.n_ref[i]) < 1e-13);
        }
    }
    SUBCASE("icosphere level 3: H ~ 1/R, outward") {
        const GeneratedShape s = icosphere(3, 2.0);
        const CurvatureField field = curvature_force_balance(s.mesh);
        std::vector<double> errors;
        for (VertexId i = 0; i < s.mesh.vertex_count(); ++i) {
            REQUIRE(field.valid[i]);
            errors.push_back(std::abs(field.h[i] - 0.5) / 0.5);
            CHECK(dot(field.hn[i], s.n_ref[i]) > 0.0);
        }
        CHECK(median(errors) < 0.05);
    }
    SUBCASE("flat grid: interior Hn vanishes, boundary invalid") {
        const GeneratedShape s = generate({.kind = ShapeKind::plane_grid, .level = 6});
        const CurvatureField field = curvature_cotangent(s.mesh);
        std::size_t interior = 0;
        for (VertexId i = 0; i < s.mesh.vertex_count(); ++i) {
            if (s.mesh.vertex_class(i) == VertexClass::interior) {
                ++interior;
                REQUIRE(field.valid[i]);
                CHECK(norm(field.hn[i]) < 1e-10);
            } else {
                CHECK_FALSE(field.valid[i]);
            }
        }
        CHECK(interior == 5 * 5);
    }
    SUBCASE("torus matches the analytic curvature") {
        const GeneratedShape s = generate({.kind = ShapeKind::torus, .radius = 2.0,
                                           .tube_radius = 0.5, .res_u = 64, .res_v = 32});
        const CurvatureField field = curvature_force_balance(s.mesh);
        std::vector<double> errors;
        for (VertexId i = 0; i < s.mesh.vertex_count(); ++i) {
            REQUIRE(field.valid[i]);
            errors.push_back(std::abs(field.h[i] - s.h_ref[i]) / std::abs(s.h_ref[i]));
        }
        CHECK(median(errors) < 0.05);
    }
    SUBCASE("open cylinder: rim invalid, tube H ~ 1/(2R)") {
        const GeneratedShape s = generate({.kind = ShapeKind::open_cylinder, .radius = 1.0,
                                           .res_u = 48, .res_v = 8, .extent = 2.0});
        const CurvatureField field = curvature_force_balance(s.mesh);
        std::size_t checked = 0;
        for (VertexId i = 0; i < s.mesh.vertex_count(); ++i) {
            if (s.mesh.vertex_class(i) == VertexClass::boundary) {
                CHECK_FALSE(field.valid[i]);
            } else {
                REQUIRE(field.valid[i]);
                CHECK(std::abs(field.h[i] - 0.5) / 0.5 < 0.05);
                ++checked;
            }
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("estimator equivalence (the central identity)") {
    const GeneratedShape shapes[] = {
        icosphere(3),
        generate({.kind = ShapeKind::uv_sphere, .radius = 1.0, .res_u = 24, .res_v = 12}),
        generate({.kind = ShapeKind::torus, .radius = 2.0, .tube_radius = 0.5, .res_u = 64,
                  .res_v = 32}),
    };
    for (const GeneratedShape& s : shapes) {
        const CurvatureField fb = curvature_force_balance(s.mesh);
        const CurvatureField ct = curvature_cotangent(s.mesh);
        for (VertexId i = 0; i < s.mesh.vertex_count(); ++i) {
            REQUIRE(fb.valid[i] == ct.valid[i]);
            if (!fb.valid[i]) continue;
            CHECK(rel_diff(fb.hn[i], ct.hn[i]) < 1e-10);
        }
    }

    SUBCASE("holds on an arbitrary (jittered) triangulation") {
        const Mesh jittered = jitter_tangential(icosphere(3).mesh, 0.10, 20260808u);
        const CurvatureField fb = curvature_force_balance(jittered);
        const CurvatureField ct = curvature_cotangent(jittered);
        for (VertexId i = 0; i < jittered.vertex_count(); ++i) {
            REQUIRE(fb.valid[i]);
            CHECK(rel_diff(fb.hn[i], ct.hn[i]) < 1e-10);
        }
    }
}

TEST_CASE("symmetry properties") {
    const GeneratedShape base = generate({.kind = ShapeKind::torus, .radius = 2.0,
                                          .tube_radius = 0.5, .res_u = 32, .res_v = 16});
    const CurvatureField ref = curvature_force_balance(base.mesh);

    SUBCASE("scale covariance: Hn scales as 1/s") {
        const double s = 3.7;
        std::vector<Vec3> scaled = base.mesh.positions();
        for (Vec3& p : scaled) p *= s;
        const CurvatureField field = curvature_force_balance(base.mesh.with_positions(scaled));
        for (VertexId i = 0; i < base.mesh.vertex_count(); ++i)
            CHECK(rel_diff(field.hn[i], ref.hn[i] / s) < 1e-12);
    }
    SUBCASE("rigid equivariance: Hn(Rx + d) = R Hn(x)") {
        std::mt19937_64 rng(11);
        const auto rot = random_rotation(rng);
        const Vec3 d{0.3, -1.2, 2.5};
        std::vector<Vec3> moved = base.mesh.positions();
        for (Vec3& p : moved) p = rot(p) + d;
        const CurvatureField field = curvature_force_balance(base.mesh.with_positions(moved));
        for (VertexId i = 0; i < base.mesh.vertex_count(); ++i)
            CHECK(rel_diff(field.hn[i], rot(ref.hn[i])) < 1e-12);
    }
    SUBCASE("gamma cancellation: force route reproduces Hn for any tension") {
        for (double gamma : {1.0, 3.3}) {
            const NodalForceField f = nodal_forces(base.mesh, gamma);
            for (VertexId i = 0; i < base.mesh.vertex_count(); ++i) {
                const Vec3 via_force = f.force[i] / (2.0 * gamma * ref.mixed_area[i]);
                CHECK(rel_diff(via_force, ref.hn[i]) < 1e-12);
            }
        }
    }
}

TEST_CASE("convergence trend on icospheres") {
    // levels 0 and 1 are exact by symmetry (every vertex in a symmetric
    // configuration); the generic trend starts at level 2
    std::vector<double> medians;
    for (int level : {1, 2, 3, 4}) {
        const GeneratedShape s = icosphere(level);
        const CurvatureField field = curvature_force_balance(s.mesh);
        std::vector<double> errors;
        for (VertexId i = 0; i < s.mesh.vertex_count(); ++i)
            errors.push_back(std::abs(field.h[i] - 1.0));
        medians.push_back(median(std::move(errors)));
    }
    CHECK(medians[0] < 1e-12);       // level 1: exact
    CHECK(medians[2] <= medians[1]); // 3 vs 2
    CHECK(medians[3] <= medians[2]); // 4 vs 3
}

TEST_CASE("torus error decreases under refinement") {
    double prev = 1e300;
    for (int res = 16; res <= 64; res *= 2) {
        const GeneratedShape s = generate({.kind = ShapeKind::torus, .radius = 2.0,
                                           .tube_radius = 0.5, .res_u = res, .res_v = res / 2});
        const CurvatureField field = curvature_force_balance(s.mesh);
        std::vector<double> errors;
        for (VertexId i = 0; i < s.mesh.vertex_count(); ++i)
            errors.push_back(std::abs(field.h[i] - s.h_ref[i]) / std::abs(s.h_ref[i]));
        const double med = median(std::move(errors));
        CHECK(med < prev);
        prev = med;
    }
}

TEST_CASE("orientation and degeneracy handling") {
    SUBCASE("inconsistent winding: magnitudes valid, warning set") {
        GeneratedShape s = icosphere(2);
        std::vector<Tri> faces = s.mesh.faces();
        std::swap(faces[0][1], faces[0][2]); // flip one face
        const Mesh flipped = Mesh::build(s.mesh.positions(), faces);
        REQUIRE_FALSE(flipped.orientation_consistent());
        const CurvatureField field = curvature_force_balance(flipped);
        CHECK(field.orientation_warning);
        std::vector<double> errors;
        for (VertexId i = 0; i < flipped.vertex_count(); ++i)
            if (field.valid[i]) errors.push_back(std::abs(norm(field.hn[i]) - 1.0));
        CHECK(median(errors) < 0.05); // |Hn| unaffected by winding
    }
    SUBCASE("degenerate faces are dropped consistently from both routes") {
        // pinch one face of an icosphere by collapsing a vertex onto a neighbor
        GeneratedShape s = icosphere(2);
        std::vector<Vec3> pos = s.mesh.positions();
        const auto ring = s.mesh.one_ring_elements(0);
        pos[ring[0].j] = pos[0]; // zero-area faces around the shared edge
        const Mesh pinched = Mesh::build(std::move(pos), s.mesh.faces());
        const CurvatureField fb = curvature_force_balance(pinched);
        const CurvatureField ct = curvature_cotangent(pinched);
        CHECK(fb.degenerate_faces > 0);
        CHECK(fb.degenerate_faces == ct.degenerate_faces);
        for (VertexId i = 0; i < pinched.vertex_count(); ++i) {
            REQUIRE(fb.valid[i] == ct.valid[i]);
            if (fb.valid[i]) CHECK(rel_diff(fb.hn[i], ct.hn[i]) < 1e-10);
        }
    }
}

TEST_CASE("pressure recovery (Young-Laplace)") {
    SUBCASE("unit icosphere, gamma 1: pressure ~ 2") {
        const GeneratedShape s = icosphere(3);
        const PressureField p = pressure_recovery(s.mesh, 1.0);
        for (VertexId i = 0; i < s.mesh.vertex_count(); ++i) {
            REQUIRE(p.valid[i]);
            CHECK(std::abs(p.pressure[i] - 2.0) < 0.05 * 2.0);
        }
    }
    SUBCASE("sphere R=2, gamma 3: pressure ~ 3") {
        const GeneratedShape s = icosphere(3, 2.0);
        const PressureField p = pressure_recovery(s.mesh, 3.0);
        for (VertexId i = 0; i < s.mesh.vertex_count(); ++i)
            CHECK(std::abs(p.pressure[i] - 3.0) < 0.05 * 3.0);
    }
    SUBCASE("flat grid: interior pressure ~ 0, boundary invalid") {
        const GeneratedShape s = generate({.kind = ShapeKind::plane_grid, .level = 4});
        const PressureField p = pressure_recovery(s.mesh, 2.0);
        for (VertexId i = 0; i < s.mesh.vertex_count(); ++i) {
            if (s.mesh.vertex_class(i) == VertexClass::interior) {
                REQUIRE(p.valid[i]);
                CHECK(std::abs(p.pressure[i]) < 1e-10);
            } else {
                CHECK_FALSE(p.valid[i]);
            }
        }
    }
}
