/* meancurv - mean-curvature normal estimation on triangulated surfaces.
 *
 * C interface of libmeancurv. Handles are opaque; every function that can
 * fail returns an mcn_status and leaves a thread-local message readable via
 * mcn_last_error(). Array getters return pointers owned by the handle,
 * valid until it is freed. All index buffers are uint32 triples, all
 * coordinate buffers interleaved xyz doubles.
 */
#ifndef MEANCURV_H
#define MEANCURV_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mcn_status {
    MCN_OK = 0,
    MCN_ERROR_INVALID_ARGUMENT = 1,
    MCN_ERROR_STRUCTURAL = 2,     /* bad indices, count mismatches */
    MCN_ERROR_NON_MANIFOLD = 3,   /* topological defect at a named vertex */
    MCN_ERROR_DEGENERATE = 4,     /* collapsed elements / aborted flow */
    MCN_ERROR_PARSE = 5,          /* malformed file content */
    MCN_ERROR_IO = 6,             /* filesystem failure */
    MCN_ERROR_UNKNOWN = 7
} mcn_status;

/* Message of the most recent failure on this thread ("" when none). */
const char* mcn_last_error(void);

typedef struct mcn_mesh mcn_mesh;
typedef struct mcn_field mcn_field;
typedef struct mcn_flow mcn_flow;

/* ---- mesh ---------------------------------------------------------------- */

/* Builds a mesh and its adjacency from raw arrays. Faces are kept as given;
 * winding is checked, never repaired. */
mcn_status mcn_mesh_create(const double* positions_xyz, size_t vertex_count,
                           const uint32_t* face_triples, size_t face_count, mcn_mesh** out);
/* Reads .obj or .off (by extension). */
mcn_status mcn_mesh_load(const char* path, mcn_mesh** out);
/* Writes .obj or .off (by extension; anything else is written as OBJ). */
mcn_status mcn_mesh_save(const mcn_mesh* mesh, const char* path);
void mcn_mesh_free(mcn_mesh* mesh);

size_t mcn_mesh_vertex_count(const mcn_mesh* mesh);
size_t mcn_mesh_face_count(const mcn_mesh* mesh);
size_t mcn_mesh_edge_count(const mcn_mesh* mesh);
const double* mcn_mesh_positions(const mcn_mesh* mesh);
const uint32_t* mcn_mesh_faces(const mcn_mesh* mesh);
double mcn_mesh_mean_edge_length(const mcn_mesh* mesh);
double mcn_mesh_total_area(const mcn_mesh* mesh);
double mcn_mesh_volume(const mcn_mesh* mesh);

typedef struct mcn_mesh_info {
    size_t vertices;
    size_t faces;
    size_t edges;
    size_t boundary_vertices;
    size_t non_manifold_vertices;
    size_t boundary_edges;
    size_t non_manifold_edges;
    int oriented; /* 1 when every interior edge is traversed oppositely by its two faces */
    int closed;   /* 1 when no boundary and no non-manifold edges */
} mcn_mesh_info;
mcn_status mcn_mesh_get_info(const mcn_mesh* mesh, mcn_mesh_info* out);

/* Build-time warnings (orphan vertices, inconsistent winding, ...). */
size_t mcn_mesh_warning_count(const mcn_mesh* mesh);
const char* mcn_mesh_warning(const mcn_mesh* mesh, size_t index);

/* ---- analytic shapes ----------------------------------------------------- */

typedef enum mcn_shape_kind {
    MCN_SHAPE_ICOSPHERE = 0,
    MCN_SHAPE_UV_SPHERE = 1,
    MCN_SHAPE_TORUS = 2,
    MCN_SHAPE_PLANE_GRID = 3,
    MCN_SHAPE_OPEN_CYLINDER = 4
} mcn_shape_kind;

typedef struct mcn_shape_spec {
    int kind;           /* mcn_shape_kind */
    double radius;      /* sphere/cylinder radius, torus center-circle radius */
    double tube_radius; /* torus only */
    int level;          /* icosphere subdivision / plane grid cells per side */
    int res_u;          /* segments around */
    int res_v;          /* rings / height segments */
    double extent;      /* plane side length / cylinder height */
    double center[3];
} mcn_shape_spec;

/* Fills the spec with usable defaults (unit icosphere, level 0). */
void mcn_shape_spec_init(mcn_shape_spec* spec);

/* Generated meshes carry a per-vertex analytic reference: mean curvature
 * and outward unit normal, queryable below. */
mcn_status mcn_mesh_generate(const mcn_shape_spec* spec, mcn_mesh** out);
int mcn_mesh_has_reference(const mcn_mesh* mesh);
const double* mcn_mesh_reference_h(const mcn_mesh* mesh);       /* NULL when absent */
const double* mcn_mesh_reference_normals(const mcn_mesh* mesh); /* NULL when absent */

/* Seeded tangential jitter: each vertex moves inside its tangent plane by at
 * most amplitude * (shortest incident edge). The analytic reference, when
 * present, is carried over (tangential moves keep it first-order valid). */
mcn_status mcn_mesh_jitter(const mcn_mesh* mesh, double amplitude, uint64_t seed,
                           mcn_mesh** out);

/* ---- curvature ----------------------------------------------------------- */

typedef enum mcn_estimator {
    MCN_ESTIMATOR_FORCE_BALANCE = 0, /* opposite-edge tension sums per element */
    MCN_ESTIMATOR_COTANGENT = 1      /* cotangent weights per link */
} mcn_estimator;

/* Per-vertex mean-curvature normal, signed scalar H, mixed Voronoi area and
 * validity (boundary / non-manifold / fully degenerate rings are invalid). */
mcn_status mcn_curvature_compute(const mcn_mesh* mesh, mcn_estimator estimator,
                                 mcn_field** out);
void mcn_field_free(mcn_field* field);
size_t mcn_field_size(const mcn_field* field);
const double* mcn_field_hn(const mcn_field* field);
const double* mcn_field_h(const mcn_field* field);
const double* mcn_field_mixed_area(const mcn_field* field);
const uint8_t* mcn_field_valid(const mcn_field* field);
int mcn_field_orientation_warning(const mcn_field* field);
size_t mcn_field_degenerate_faces(const mcn_field* field);
size_t mcn_field_invalid_vertices(const mcn_field* field);

/* Surface-tension nodal forces (gamma > 0) into caller arrays of size
 * 3*vertex_count and vertex_count. On convex closed surfaces the force
 * points outward, ~ 2*gamma*H*A_i along the vertex normal. */
mcn_status mcn_nodal_forces(const mcn_mesh* mesh, double gamma, double* forces_xyz,
                            uint8_t* valid);
/* Young-Laplace pressure estimate (F_i . n_i)/A_i ~ 2*gamma*H. */
mcn_status mcn_pressure(const mcn_mesh* mesh, double gamma, double* pressure, uint8_t* valid);

/* CSV report, rows ordered by vertex index; path NULL writes to stdout.
 * include_reference != 0 adds H_ref/abs_error/rel_error columns and fails
 * with MCN_ERROR_INVALID_ARGUMENT when the mesh carries no reference. */
mcn_status mcn_report_write(const mcn_mesh* mesh, const mcn_field* field, const char* path,
                            int include_reference);

/* ---- mean-curvature flow ------------------------------------------------- */

typedef enum mcn_flow_mode {
    MCN_FLOW_CURVATURE = 0,        /* x <- x - dt * Hn */
    MCN_FLOW_FORCE_RELAXATION = 1  /* x <- x - dt/(2 A_i) * F_i/gamma (identical) */
} mcn_flow_mode;

typedef struct mcn_flow_config {
    double dt;
    double gamma;
    int mode; /* mcn_flow_mode */
    double stop_tol;                  /* informational; stepping is caller-driven */
    double abort_degenerate_fraction; /* step fails beyond this fraction */
} mcn_flow_config;
void mcn_flow_config_init(mcn_flow_config* config);

typedef struct mcn_flow_stats {
    double max_hn;
    double area;
    double volume;
    size_t degenerate_faces;
} mcn_flow_stats;

mcn_status mcn_flow_create(const mcn_mesh* mesh, const mcn_flow_config* config,
                           mcn_flow** out);
/* Diagnostics of the current state. */
mcn_status mcn_flow_measure(const mcn_flow* flow, mcn_flow_stats* out);
/* One explicit Euler step. Returns MCN_ERROR_DEGENERATE and leaves the state
 * unchanged when the degenerate-face fraction exceeds the configured limit.
 * held_vertices (optional) receives the number of invalid vertices kept fixed. */
mcn_status mcn_flow_step(mcn_flow* flow, size_t* held_vertices);
/* Snapshot of the current state as a new mesh handle. */
mcn_status mcn_flow_export(const mcn_flow* flow, mcn_mesh** out);
void mcn_flow_free(mcn_flow* flow);

#ifdef __cplusplus
}
#endif

#endif /* MEANCURV_H */
