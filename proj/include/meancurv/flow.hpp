#pragma once

#include <cstdint>
#include <vector>

#include "meancurv/mesh.hpp"

namespace meancurv {

enum class FlowMode : std::uint8_t {
    curvature_flow,   // x <- x - dt * Hn           (force-balance estimator)
    force_relaxation, // x <- x - dt/(2 A_i) * F_i/gamma  (identical update)
};

/// Explicit Euler only; stability is the caller's dt. Guideline:
/// dt < (min edge length)^2 / 4.
struct FlowConfig {
    double dt = 1e-3;
    int steps = 1;
    double gamma = 1.0;
    FlowMode mode = FlowMode::curvature_flow;
    double stop_tol = 0.0; // stop early once max|Hn| <= stop_tol (0 = never)
    double abort_degenerate_fraction = 0.10;
};

struct FlowStats {
    double max_hn = 0.0;
    double area = 0.0;
    double volume = 0.0;
    std::size_t degenerate_faces = 0;
};

struct FlowStepResult {
    std::vector<Vec3> positions; // post-step
    std::size_t held_vertices = 0; // invalid vertices kept fixed
    bool aborted = false; // degenerate-face fraction exceeded; positions unchanged
    double degenerate_fraction = 0.0;
};

/// One explicit Euler step. Mixed areas and one-ring geometry are computed
/// fresh from the current positions; old positions are read, new written
/// (double-buffered). Invalid vertices are held fixed. Throws
/// Error(invalid_argument) on a bad config.
FlowStepResult flow_step(const Mesh& mesh, const FlowConfig& config);

/// Diagnostics of a state: max|Hn| over valid vertices, total area,
/// enclosed volume.
FlowStats measure_state(const Mesh& mesh);

} // namespace meancurv
