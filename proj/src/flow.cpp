#include "meancurv/flow.hpp"

#include <cmath>

#include "meancurv/curvature.hpp"
#include "meancurv/error.hpp"

namespace meancurv {

FlowStepResult flow_step(const Mesh& mesh, const FlowConfig& config) {
    if (config.dt <= 0.0) throw Error(ErrorKind::invalid_argument, "flow: dt must be positive");
    if (config.gamma <= 0.0)
        throw Error(ErrorKind::invalid_argument, "flow: gamma must be positive");

    FlowStepResult out;
    out.positions = mesh.positions();

    const CurvatureField field = curvature_force_balance(mesh);
    out.degenerate_fraction =
        mesh.face_count() == 0
            ? 0.0
            : static_cast<double>(field.degenerate_faces) / static_cast<double>(mesh.face_count());
    if (out.degenerate_fraction > config.abort_degenerate_fraction) {
        out.aborted = true;
        return out;
    }

    if (config.mode == FlowMode::curvature_flow) {
        for (VertexId i = 0; i < mesh.vertex_count(); ++i) {
            if (!field.valid[i]) {
                ++out.held_vertices;
                continue;
            }
            out.positions[i] -= config.dt * field.hn[i];
        }
    } else {
        // Same update through the force path: F_i / (2 gamma A_i) = Hn_i.
        const NodalForceField forces = nodal_forces(mesh, config.gamma);
        for (VertexId i = 0; i < mesh.vertex_count(); ++i) {
            if (!field.valid[i] || !forces.valid[i]) {
                ++out.held_vertices;
                continue;
            }
            out.positions[i] -=
                (config.dt / (2.0 * field.mixed_area[i])) * (forces.force[i] / config.gamma);
        }
    }
    return out;
}

FlowStats measure_state(const Mesh& mesh) {
    const CurvatureField field = curvature_force_balance(mesh);
    FlowStats stats;
    stats.area = mesh.total_area();
    stats.volume = mesh.signed_volume();
    stats.degenerate_faces = field.degenerate_faces;
    for (VertexId i = 0; i < mesh.vertex_count(); ++i)
        if (field.valid[i]) stats.max_hn = std::max(stats.max_hn, norm(field.hn[i]));
    return stats;
}

} // namespace meancurv
