#include "meancurv.h"

#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "meancurv/curvature.hpp"
#include "meancurv/error.hpp"
#include "meancurv/flow.hpp"
#include "meancurv/io.hpp"
#include "meancurv/mesh.hpp"
#include "meancurv/shapes.hpp"

using namespace meancurv;

struct mcn_mesh {
    Mesh mesh;
    // analytic reference carried by generated (and jittered) meshes
    std::vector<double> ref_h;
    std::vector<Vec3> ref_n;

    explicit mcn_mesh(Mesh m) : mesh(std::move(m)) {}
};

struct mcn_field {
    CurvatureField field;
};

struct mcn_flow {
    Mesh state;
    FlowConfig config;

    mcn_flow(Mesh m, FlowConfig c) : state(std::move(m)), config(c) {}
};

namespace {

thread_local std::string g_last_error;

mcn_status to_status(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::invalid_argument: return MCN_ERROR_INVALID_ARGUMENT;
    case ErrorKind::structural: return MCN_ERROR_STRUCTURAL;
    case ErrorKind::non_manifold: return MCN_ERROR_NON_MANIFOLD;
    case ErrorKind::degenerate: return MCN_ERROR_DEGENERATE;
    case ErrorKind::parse: return MCN_ERROR_PARSE;
    case ErrorKind::io: return MCN_ERROR_IO;
    }
    return MCN_ERROR_UNKNOWN;
}

template <typename Fn>
mcn_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return MCN_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return to_status(e.kind());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return MCN_ERROR_UNKNOWN;
    }
}

mcn_status fail_argument(const char* message) {
    g_last_error = message;
    return MCN_ERROR_INVALID_ARGUMENT;
}

} // namespace

extern "C" {

const char* mcn_last_error(void) { return g_last_error.c_str(); }

/* ---- mesh ---------------------------------------------------------------- */

mcn_status mcn_mesh_create(const double* positions_xyz, size_t vertex_count,
                           const uint32_t* face_triples, size_t face_count, mcn_mesh** out) {
    if (out == nullptr || positions_xyz == nullptr || (face_count > 0 && face_triples == nullptr))
        return fail_argument("mcn_mesh_create: null argument");
    return guarded([&] {
        std::vector<Vec3> positions(vertex_count);
        for (size_t i = 0; i < vertex_count; ++i)
            positions[i] = {positions_xyz[3 * i], positions_xyz[3 * i + 1],
                            positions_xyz[3 * i + 2]};
        std::vector<Tri> faces(face_count);
        for (size_t f = 0; f < face_count; ++f)
            faces[f] = {face_triples[3 * f], face_triples[3 * f + 1], face_triples[3 * f + 2]};
        *out = new mcn_mesh(Mesh::build(std::move(positions), std::move(faces)));
    });
}

mcn_status mcn_mesh_load(const char* path, mcn_mesh** out) {
    if (out == nullptr || path == nullptr) return fail_argument("mcn_mesh_load: null argument");
    return guarded([&] {
        ParsedMesh parsed = read_mesh_file(path);
        *out = new mcn_mesh(Mesh::build(std::move(parsed.positions), std::move(parsed.faces)));
    });
}

mcn_status mcn_mesh_save(const mcn_mesh* mesh, const char* path) {
    if (mesh == nullptr || path == nullptr) return fail_argument("mcn_mesh_save: null argument");
    return guarded([&] { write_mesh_file(path, mesh->mesh); });
}

void mcn_mesh_free(mcn_mesh* mesh) { delete mesh; }

size_t mcn_mesh_vertex_count(const mcn_mesh* mesh) { return mesh->mesh.vertex_count(); }
size_t mcn_mesh_face_count(const mcn_mesh* mesh) { return mesh->mesh.face_count(); }
size_t mcn_mesh_edge_count(const mcn_mesh* mesh) { return mesh->mesh.edge_count(); }

const double* mcn_mesh_positions(const mcn_mesh* mesh) {
    return &mesh->mesh.positions().front().x;
}

const uint32_t* mcn_mesh_faces(const mcn_mesh* mesh) {
    return mesh->mesh.faces().empty() ? nullptr : mesh->mesh.faces().front().data();
}

double mcn_mesh_mean_edge_length(const mcn_mesh* mesh) { return mesh->mesh.mean_edge_length(); }
double mcn_mesh_total_area(const mcn_mesh* mesh) { return mesh->mesh.total_area(); }
double mcn_mesh_volume(const mcn_mesh* mesh) { return mesh->mesh.signed_volume(); }

mcn_status mcn_mesh_get_info(const mcn_mesh* mesh, mcn_mesh_info* out) {
    if (mesh == nullptr || out == nullptr) return fail_argument("mcn_mesh_get_info: null argument");
    out->vertices = mesh->mesh.vertex_count();
    out->faces = mesh->mesh.face_count();
    out->edges = mesh->mesh.edge_count();
    out->boundary_vertices = mesh->mesh.count_vertices(VertexClass::boundary);
    out->non_manifold_vertices = mesh->mesh.count_vertices(VertexClass::non_manifold);
    out->boundary_edges = mesh->mesh.boundary_edge_count();
    out->non_manifold_edges = mesh->mesh.non_manifold_edge_count();
    out->oriented = mesh->mesh.orientation_consistent() ? 1 : 0;
    out->closed = mesh->mesh.closed() ? 1 : 0;
    return MCN_OK;
}

size_t mcn_mesh_warning_count(const mcn_mesh* mesh) { return mesh->mesh.warnings().size(); }

const char* mcn_mesh_warning(const mcn_mesh* mesh, size_t index) {
    if (index >= mesh->mesh.warnings().size()) return nullptr;
    return mesh->mesh.warnings()[index].c_str();
}

/* ---- analytic shapes ----------------------------------------------------- */

void mcn_shape_spec_init(mcn_shape_spec* spec) {
    if (spec == nullptr) return;
    std::memset(spec, 0, sizeof(*spec));
    spec->kind = MCN_SHAPE_ICOSPHERE;
    spec->radius = 1.0;
    spec->tube_radius = 0.25;
    spec->level = 0;
    spec->res_u = 32;
    spec->res_v = 16;
    spec->extent = 1.0;
}

mcn_status mcn_mesh_generate(const mcn_shape_spec* spec, mcn_mesh** out) {
    if (spec == nullptr || out == nullptr)
        return fail_argument("mcn_mesh_generate: null argument");
    return guarded([&] {
        ShapeSpec s;
        switch (spec->kind) {
        case MCN_SHAPE_ICOSPHERE: s.kind = ShapeKind::icosphere; break;
        case MCN_SHAPE_UV_SPHERE: s.kind = ShapeKind::uv_sphere; break;
        case MCN_SHAPE_TORUS: s.kind = ShapeKind::torus; break;
        case MCN_SHAPE_PLANE_GRID: s.kind = ShapeKind::plane_grid; break;
        case MCN_SHAPE_OPEN_CYLINDER: s.kind = ShapeKind::open_cylinder; break;
        default: throw Error(ErrorKind::invalid_argument, "unknown shape kind");
        }
        s.radius = spec->radius;
        s.tube_radius = spec->tube_radius;
        s.level = spec->level;
        s.res_u = spec->res_u;
        s.res_v = spec->res_v;
        s.extent = spec->extent;
        s.center = {spec->center[0], spec->center[1], spec->center[2]};
        GeneratedShape shape = generate(s);
        auto handle = std::make_unique<mcn_mesh>(std::move(shape.mesh));
        handle->ref_h = std::move(shape.h_ref);
        handle->ref_n = std::move(shape.n_ref);
        *out = handle.release();
    });
}

int mcn_mesh_has_reference(const mcn_mesh* mesh) { return mesh->ref_h.empty() ? 0 : 1; }

const double* mcn_mesh_reference_h(const mcn_mesh* mesh) {
    return mesh->ref_h.empty() ? nullptr : mesh->ref_h.data();
}

const double* mcn_mesh_reference_normals(const mcn_mesh* mesh) {
    return mesh->ref_n.empty() ? nullptr : &mesh->ref_n.front().x;
}

mcn_status mcn_mesh_jitter(const mcn_mesh* mesh, double amplitude, uint64_t seed,
                           mcn_mesh** out) {
    if (mesh == nullptr || out == nullptr) return fail_argument("mcn_mesh_jitter: null argument");
    return guarded([&] {
        auto handle = std::make_unique<mcn_mesh>(jitter_tangential(mesh->mesh, amplitude, seed));
        handle->ref_h = mesh->ref_h;
        handle->ref_n = mesh->ref_n;
        *out = handle.release();
    });
}

/* ---- curvature ----------------------------------------------------------- */

mcn_status mcn_curvature_compute(const mcn_mesh* mesh, mcn_estimator estimator,
                                 mcn_field** out) {
    if (mesh == nullptr || out == nullptr)
        return fail_argument("mcn_curvature_compute: null argument");
    return guarded([&] {
        auto handle = std::make_unique<mcn_field>();
        handle->field = estimator == MCN_ESTIMATOR_COTANGENT
                            ? curvature_cotangent(mesh->mesh)
                            : curvature_force_balance(mesh->mesh);
        *out = handle.release();
    });
}

void mcn_field_free(mcn_field* field) { delete field; }

size_t mcn_field_size(const mcn_field* field) { return field->field.hn.size(); }
const double* mcn_field_hn(const mcn_field* field) { return &field->field.hn.front().x; }
const double* mcn_field_h(const mcn_field* field) { return field->field.h.data(); }
const double* mcn_field_mixed_area(const mcn_field* field) {
    return field->field.mixed_area.data();
}
const uint8_t* mcn_field_valid(const mcn_field* field) { return field->field.valid.data(); }
int mcn_field_orientation_warning(const mcn_field* field) {
    return field->field.orientation_warning ? 1 : 0;
}
size_t mcn_field_degenerate_faces(const mcn_field* field) {
    return field->field.degenerate_faces;
}
size_t mcn_field_invalid_vertices(const mcn_field* field) {
    return field->field.invalid_vertices;
}

mcn_status mcn_nodal_forces(const mcn_mesh* mesh, double gamma, double* forces_xyz,
                            uint8_t* valid) {
    if (mesh == nullptr || forces_xyz == nullptr)
        return fail_argument("mcn_nodal_forces: null argument");
    return guarded([&] {
        const NodalForceField f = nodal_forces(mesh->mesh, gamma);
        for (size_t i = 0; i < f.force.size(); ++i) {
            forces_xyz[3 * i] = f.force[i].x;
            forces_xyz[3 * i + 1] = f.force[i].y;
            forces_xyz[3 * i + 2] = f.force[i].z;
            if (valid != nullptr) valid[i] = f.valid[i];
        }
    });
}

mcn_status mcn_pressure(const mcn_mesh* mesh, double gamma, double* pressure, uint8_t* valid) {
    if (mesh == nullptr || pressure == nullptr)
        return fail_argument("mcn_pressure: null argument");
    return guarded([&] {
        const PressureField p = pressure_recovery(mesh->mesh, gamma);
        for (size_t i = 0; i < p.pressure.size(); ++i) {
            pressure[i] = p.pressure[i];
            if (valid != nullptr) valid[i] = p.valid[i];
        }
    });
}

mcn_status mcn_report_write(const mcn_mesh* mesh, const mcn_field* field, const char* path,
                            int include_reference) {
    if (mesh == nullptr || field == nullptr)
        return fail_argument("mcn_report_write: null argument");
    if (field->field.hn.size() != mesh->mesh.vertex_count())
        return fail_argument("mcn_report_write: field does not match mesh");
    if (include_reference && mesh->ref_h.empty())
        return fail_argument("mcn_report_write: mesh carries no analytic reference");
    return guarded([&] {
        ReportReference ref;
        if (include_reference) ref.h_ref = &mesh->ref_h;
        if (path == nullptr) {
            write_report(std::cout, mesh->mesh, field->field, ref);
        } else {
            std::ofstream out(path);
            if (!out) throw Error(ErrorKind::io, std::string("cannot write ") + path);
            write_report(out, mesh->mesh, field->field, ref);
        }
    });
}

/* ---- mean-curvature flow ------------------------------------------------- */

void mcn_flow_config_init(mcn_flow_config* config) {
    if (config == nullptr) return;
    config->dt = 1e-3;
    config->gamma = 1.0;
    config->mode = MCN_FLOW_CURVATURE;
    config->stop_tol = 0.0;
    config->abort_degenerate_fraction = 0.10;
}

mcn_status mcn_flow_create(const mcn_mesh* mesh, const mcn_flow_config* config,
                           mcn_flow** out) {
    if (mesh == nullptr || config == nullptr || out == nullptr)
        return fail_argument("mcn_flow_create: null argument");
    if (config->dt <= 0.0) return fail_argument("mcn_flow_create: dt must be positive");
    if (config->gamma <= 0.0) return fail_argument("mcn_flow_create: gamma must be positive");
    return guarded([&] {
        FlowConfig cfg;
        cfg.dt = config->dt;
        cfg.gamma = config->gamma;
        cfg.mode = config->mode == MCN_FLOW_FORCE_RELAXATION ? FlowMode::force_relaxation
                                                             : FlowMode::curvature_flow;
        cfg.stop_tol = config->stop_tol;
        cfg.abort_degenerate_fraction = config->abort_degenerate_fraction;
        *out = new mcn_flow(mesh->mesh, cfg);
    });
}

mcn_status mcn_flow_measure(const mcn_flow* flow, mcn_flow_stats* out) {
    if (flow == nullptr || out == nullptr) return fail_argument("mcn_flow_measure: null argument");
    return guarded([&] {
        const FlowStats stats = measure_state(flow->state);
        out->max_hn = stats.max_hn;
        out->area = stats.area;
        out->volume = stats.volume;
        out->degenerate_faces = stats.degenerate_faces;
    });
}

mcn_status mcn_flow_step(mcn_flow* flow, size_t* held_vertices) {
    if (flow == nullptr) return fail_argument("mcn_flow_step: null argument");
    return guarded([&] {
        FlowStepResult result = flow_step(flow->state, flow->config);
        if (held_vertices != nullptr) *held_vertices = result.held_vertices;
        if (result.aborted) {
            char buf[128];
            std::snprintf(buf, sizeof(buf),
                          "flow aborted: degenerate face fraction %.3f exceeds %.3f",
                          result.degenerate_fraction, flow->config.abort_degenerate_fraction);
            throw Error(ErrorKind::degenerate, buf);
        }
        flow->state = flow->state.with_positions(std::move(result.positions));
    });
}

mcn_status mcn_flow_export(const mcn_flow* flow, mcn_mesh** out) {
    if (flow == nullptr || out == nullptr) return fail_argument("mcn_flow_export: null argument");
    return guarded([&] { *out = new mcn_mesh(flow->state); });
}

void mcn_flow_free(mcn_flow* flow) { delete flow; }

} // extern "C"
