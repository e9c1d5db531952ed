// meancurv command-line tool: generate analytic meshes, estimate mean
// curvature with the force-balance and cotangent estimators, compare them,
// run convergence studies and explicit mean-curvature flow.
//
// Uses only the public C API (meancurv.h) of libmeancurv.

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "meancurv.h"

namespace {

using MeshHandle = std::unique_ptr<mcn_mesh, decltype(&mcn_mesh_free)>;
using FieldHandle = std::unique_ptr<mcn_field, decltype(&mcn_field_free)>;
using FlowHandle = std::unique_ptr<mcn_flow, decltype(&mcn_flow_free)>;

void check(mcn_status status) {
    if (status != MCN_OK) throw std::runtime_error(mcn_last_error());
}

bool verbose() {
    const char* env = std::getenv("MEANCURV_VERBOSE");
    return env == nullptr || std::strcmp(env, "0") != 0;
}

void print_warnings(const mcn_mesh* mesh) {
    if (!verbose()) return;
    for (size_t i = 0; i < mcn_mesh_warning_count(mesh); ++i)
        std::cerr << "warning: " << mcn_mesh_warning(mesh, i) << '\n';
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// ---- input selection (file xor generated shape) ----------------------------

struct InputOptions {
    std::string input_path;
    std::string shape;
    double radius = 1.0;
    double tube_radius = 0.5;
    int level = 3;
    int res_u = 64;
    int res_v = 32;
    double extent = 1.0;
    std::vector<double> center;
    double jitter = 0.0;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void add_shape_flags(CLI::App* cmd, InputOptions& opt) {
    cmd->add_option("--shape", opt.shape,
                    "generate a mesh: icosphere, uv_sphere, torus, plane, cylinder");
    cmd->add_option("--radius", opt.radius, "sphere/cylinder radius, torus center-circle radius");
    cmd->add_option("--tube-radius", opt.tube_radius, "torus tube radius");
    cmd->add_option("--level", opt.level, "icosphere subdivision / plane cells per side");
    cmd->add_option("--res-u", opt.res_u, "segments around");
    cmd->add_option("--res-v", opt.res_v, "rings / height segments");
    cmd->add_option("--extent", opt.extent, "plane side length / cylinder height");
    cmd->add_option("--center", opt.center, "shape center (three values)")->expected(3);
    cmd->add_option("--jitter", opt.jitter,
                    "tangential jitter as a fraction of the local shortest edge");
    cmd->add_option("--seed", opt.seed, "jitter seed (required when --jitter > 0)")
        ->each([&opt](const std::string&) { opt.seed_set = true; });
}

void add_input_flags(CLI::App* cmd, InputOptions& opt) {
    cmd->add_option("--input,-i", opt.input_path, "mesh file (.obj or .off)");
    add_shape_flags(cmd, opt);
}

int shape_kind(const std::string& name) {
    if (name == "icosphere") return MCN_SHAPE_ICOSPHERE;
    if (name == "uv_sphere" || name == "uvsphere") return MCN_SHAPE_UV_SPHERE;
    if (name == "torus") return MCN_SHAPE_TORUS;
    if (name == "plane" || name == "plane_grid") return MCN_SHAPE_PLANE_GRID;
    if (name == "cylinder" || name == "open_cylinder") return MCN_SHAPE_OPEN_CYLINDER;
    throw std::runtime_error("unknown shape '" + name + "'");
}

MeshHandle resolve_input(const InputOptions& opt) {
    const bool from_file = !opt.input_path.empty();
    const bool from_shape = !opt.shape.empty();
    if (from_file == from_shape)
        throw std::runtime_error("need exactly one input source: --input or --shape");
    if (opt.jitter > 0.0 && !opt.seed_set)
        throw std::runtime_error("--jitter requires --seed for reproducibility");

    mcn_mesh* raw = nullptr;
    if (from_file) {
        check(mcn_mesh_load(opt.input_path.c_str(), &raw));
    } else {
        mcn_shape_spec spec;
        mcn_shape_spec_init(&spec);
        spec.kind = shape_kind(opt.shape);
        spec.radius = opt.radius;
        spec.tube_radius = opt.tube_radius;
        spec.level = opt.level;
        spec.res_u = opt.res_u;
        spec.res_v = opt.res_v;
        spec.extent = opt.extent;
        if (opt.center.size() == 3)
            for (int c = 0; c < 3; ++c) spec.center[c] = opt.center[c];
        check(mcn_mesh_generate(&spec, &raw));
    }
    MeshHandle mesh(raw, &mcn_mesh_free);
    if (opt.jitter > 0.0) {
        mcn_mesh* jittered = nullptr;
        check(mcn_mesh_jitter(mesh.get(), opt.jitter, opt.seed, &jittered));
        mesh.reset(jittered);
    }
    print_warnings(mesh.get());
    return mesh;
}

FieldHandle compute_field(const mcn_mesh* mesh, mcn_estimator estimator) {
    mcn_field* raw = nullptr;
    check(mcn_curvature_compute(mesh, estimator, &raw));
    return {raw, &mcn_field_free};
}

// Per-vertex relative discrepancy between the two estimators over the
// commonly valid vertices.
struct Discrepancy {
    double max = 0.0;
    double med = 0.0;
    size_t vertices = 0;
};

Discrepancy estimator_discrepancy(const mcn_field* a, const mcn_field* b,
                                  std::vector<double>* per_vertex = nullptr) {
    const size_t n = mcn_field_size(a);
    const double* ha = mcn_field_hn(a);
    const double* hb = mcn_field_hn(b);
    const uint8_t* va = mcn_field_valid(a);
    const uint8_t* vb = mcn_field_valid(b);
    if (per_vertex != nullptr) per_vertex->assign(n, 0.0);

    Discrepancy d;
    std::vector<double> values;
    for (size_t i = 0; i < n; ++i) {
        if (!va[i] || !vb[i]) continue;
        double diff = 0.0, na = 0.0, nb = 0.0;
        for (int c = 0; c < 3; ++c) {
            const double da = ha[3 * i + c], db = hb[3 * i + c];
            diff += (da - db) * (da - db);
            na += da * da;
            nb += db * db;
        }
        const double scale = std::sqrt(std::max(na, nb));
        const double rel = scale > 0.0 ? std::sqrt(diff) / scale : std::sqrt(diff);
        if (per_vertex != nullptr) (*per_vertex)[i] = rel;
        values.push_back(rel);
        d.max = std::max(d.max, rel);
    }
    d.vertices = values.size();
    d.med = median(std::move(values));
    return d;
}

std::ostream& open_or_stdout(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot write " + path);
    return file;
}

int strict_exit(const mcn_field* field, bool strict) {
    const size_t degenerate = mcn_field_degenerate_faces(field);
    const size_t invalid = mcn_field_invalid_vertices(field);
    if (degenerate > 0 || invalid > 0) {
        if (verbose())
            std::cerr << "warning: " << degenerate << " degenerate faces, " << invalid
                      << " invalid vertices\n";
        if (strict) {
            std::cerr << "strict: diagnostics present (" << degenerate << " degenerate faces, "
                      << invalid << " invalid vertices)\n";
            return 2;
        }
    }
    return 0;
}

// ---- subcommands ------------------------------------------------------------

int run_gen(const InputOptions& in, const std::string& output) {
    if (in.shape.empty()) throw std::runtime_error("gen requires --shape");
    InputOptions opt = in;
    opt.input_path.clear();
    MeshHandle mesh = resolve_input(opt);
    check(mcn_mesh_save(mesh.get(), output.c_str()));
    mcn_mesh_info info;
    check(mcn_mesh_get_info(mesh.get(), &info));
    std::cout << "wrote " << output << ": " << info.vertices << " vertices, " << info.faces
              << " faces, " << info.edges << " edges\n";
    return 0;
}

int run_compute(const InputOptions& in, const std::string& estimator, const std::string& output,
                const std::string& pressure_output, double gamma, bool strict) {
    MeshHandle mesh = resolve_input(in);

    FieldHandle primary(nullptr, &mcn_field_free);
    if (estimator == "force" || estimator == "both") {
        primary = compute_field(mesh.get(), MCN_ESTIMATOR_FORCE_BALANCE);
    } else if (estimator == "cotangent") {
        primary = compute_field(mesh.get(), MCN_ESTIMATOR_COTANGENT);
    } else {
        throw std::runtime_error("unknown estimator '" + estimator + "'");
    }
    if (estimator == "both") {
        FieldHandle other = compute_field(mesh.get(), MCN_ESTIMATOR_COTANGENT);
        const Discrepancy d = estimator_discrepancy(primary.get(), other.get());
        std::cerr << "estimator discrepancy: max " << fmt(d.max) << " median " << fmt(d.med)
                  << " over " << d.vertices << " vertices\n";
    }

    const int include_reference = mcn_mesh_has_reference(mesh.get()) ? 1 : 0;
    check(mcn_report_write(mesh.get(), primary.get(),
                           output.empty() ? nullptr : output.c_str(), include_reference));

    if (!pressure_output.empty()) {
        const size_t n = mcn_mesh_vertex_count(mesh.get());
        std::vector<double> pressure(n);
        std::vector<uint8_t> valid(n);
        check(mcn_pressure(mesh.get(), gamma, pressure.data(), valid.data()));
        std::ofstream out(pressure_output);
        if (!out) throw std::runtime_error("cannot write " + pressure_output);
        out << "vertex,pressure,valid\n";
        for (size_t i = 0; i < n; ++i) {
            out << i << ',';
            if (valid[i]) out << fmt(pressure[i]);
            out << ',' << (valid[i] ? "true" : "false") << '\n';
        }
    }
    return strict_exit(primary.get(), strict);
}

int run_compare(const InputOptions& in, const std::string& per_vertex_path, bool strict) {
    MeshHandle mesh = resolve_input(in);
    FieldHandle force = compute_field(mesh.get(), MCN_ESTIMATOR_FORCE_BALANCE);
    FieldHandle cot = compute_field(mesh.get(), MCN_ESTIMATOR_COTANGENT);

    std::vector<double> per_vertex;
    const Discrepancy d = estimator_discrepancy(force.get(), cot.get(),
                                                per_vertex_path.empty() ? nullptr : &per_vertex);
    std::cout << "estimator discrepancy: max " << fmt(d.max) << " median " << fmt(d.med)
              << " over " << d.vertices << " vertices\n";

    if (!per_vertex_path.empty()) {
        std::ofstream out(per_vertex_path);
        if (!out) throw std::runtime_error("cannot write " + per_vertex_path);
        const uint8_t* vf = mcn_field_valid(force.get());
        const uint8_t* vc = mcn_field_valid(cot.get());
        out << "vertex,rel_discrepancy,valid\n";
        for (size_t i = 0; i < per_vertex.size(); ++i) {
            const bool ok = vf[i] && vc[i];
            out << i << ',';
            if (ok) out << fmt(per_vertex[i]);
            out << ',' << (ok ? "true" : "false") << '\n';
        }
    }
    return strict_exit(force.get(), strict);
}

int run_convergence(const InputOptions& in, int min_level, int max_level,
                    const std::string& output) {
    if (in.shape.empty()) throw std::runtime_error("convergence requires --shape");
    if (min_level < 1 || max_level < min_level)
        throw std::runtime_error("convergence: need 1 <= min-level <= max-level");
    if (in.jitter > 0.0 && !in.seed_set)
        throw std::runtime_error("--jitter requires --seed for reproducibility");
    const int kind = shape_kind(in.shape);
    const bool absolute = kind == MCN_SHAPE_PLANE_GRID;

    std::ofstream file;
    std::ostream& out = open_or_stdout(file, output);
    out << "level,vertices,mean_edge_length,"
        << (absolute ? "median_abs_error,max_abs_error" : "median_rel_error,max_rel_error")
        << '\n';

    for (int level = min_level; level <= max_level; ++level) {
        mcn_shape_spec spec;
        mcn_shape_spec_init(&spec);
        spec.kind = kind;
        spec.radius = in.radius;
        spec.tube_radius = in.tube_radius;
        spec.extent = in.extent;
        // level -> resolution family: icosphere subdivision, plane cells,
        // torus/uv grids doubling from 16x8
        spec.level = level;
        spec.res_u = 16 << (level - 1);
        spec.res_v = 8 << (level - 1);
        if (kind == MCN_SHAPE_PLANE_GRID) spec.level = 8 << (level - 1);

        mcn_mesh* raw = nullptr;
        check(mcn_mesh_generate(&spec, &raw));
        MeshHandle mesh(raw, &mcn_mesh_free);
        if (in.jitter > 0.0) {
            mcn_mesh* jittered = nullptr;
            check(mcn_mesh_jitter(mesh.get(), in.jitter, in.seed, &jittered));
            mesh.reset(jittered);
        }

        FieldHandle field = compute_field(mesh.get(), MCN_ESTIMATOR_FORCE_BALANCE);
        const size_t n = mcn_field_size(field.get());
        const double* h = mcn_field_h(field.get());
        const uint8_t* valid = mcn_field_valid(field.get());
        const double* h_ref = mcn_mesh_reference_h(mesh.get());

        std::vector<double> errors;
        double max_err = 0.0;
        for (size_t i = 0; i < n; ++i) {
            if (!valid[i]) continue;
            double err = std::abs(h[i] - h_ref[i]);
            if (!absolute) err /= std::abs(h_ref[i]);
            errors.push_back(err);
            max_err = std::max(max_err, err);
        }
        out << level << ',' << n << ',' << fmt(mcn_mesh_mean_edge_length(mesh.get())) << ','
            << fmt(median(std::move(errors))) << ',' << fmt(max_err) << '\n';
    }
    return 0;
}

int run_flow(const InputOptions& in, double dt, int steps, double gamma,
             const std::string& mode, double stop_tol, const std::string& diagnostics,
             const std::string& output) {
    MeshHandle mesh = resolve_input(in);

    mcn_flow_config config;
    mcn_flow_config_init(&config);
    config.dt = dt;
    config.gamma = gamma;
    config.stop_tol = stop_tol;
    if (mode == "force")
        config.mode = MCN_FLOW_FORCE_RELAXATION;
    else if (mode != "curvature")
        throw std::runtime_error("unknown flow mode '" + mode + "' (curvature or force)");

    mcn_flow* raw = nullptr;
    check(mcn_flow_create(mesh.get(), &config, &raw));
    FlowHandle flow(raw, &mcn_flow_free);

    std::ofstream file;
    std::ostream& out = open_or_stdout(file, diagnostics);
    out << "step,max_Hn,area,volume\n";
    mcn_flow_stats stats;
    check(mcn_flow_measure(flow.get(), &stats));
    out << 0 << ',' << fmt(stats.max_hn) << ',' << fmt(stats.area) << ',' << fmt(stats.volume)
        << '\n';

    bool warned_held = false;
    for (int step = 1; step <= steps; ++step) {
        size_t held = 0;
        check(mcn_flow_step(flow.get(), &held));
        if (held > 0 && !warned_held && verbose()) {
            std::cerr << "warning: " << held << " invalid vertices held fixed\n";
            warned_held = true;
        }
        check(mcn_flow_measure(flow.get(), &stats));
        out << step << ',' << fmt(stats.max_hn) << ',' << fmt(stats.area) << ','
            << fmt(stats.volume) << '\n';
        if (stop_tol > 0.0 && stats.max_hn <= stop_tol) break;
    }

    if (!output.empty()) {
        mcn_mesh* final_raw = nullptr;
        check(mcn_flow_export(flow.get(), &final_raw));
        MeshHandle final_mesh(final_raw, &mcn_mesh_free);
        check(mcn_mesh_save(final_mesh.get(), output.c_str()));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mean-curvature normal estimation on triangulated surfaces"};
    app.require_subcommand(1);

    // gen
    InputOptions gen_in;
    std::string gen_output;
    CLI::App* gen = app.add_subcommand("gen", "generate an analytic test mesh");
    add_shape_flags(gen, gen_in);
    gen->add_option("--output,-o", gen_output, "mesh file to write (.obj or .off)")->required();

    // compute
    InputOptions compute_in;
    std::string compute_estimator = "force";
    std::string compute_output, pressure_output;
    double compute_gamma = 1.0;
    bool compute_strict = false;
    CLI::App* compute = app.add_subcommand("compute", "per-vertex curvature report (CSV)");
    add_input_flags(compute, compute_in);
    compute->add_option("--estimator", compute_estimator, "force, cotangent or both");
    compute->add_option("--output,-o", compute_output, "report path (default: stdout)");
    compute->add_option("--pressure", pressure_output,
                        "also write a Young-Laplace pressure CSV to this path");
    compute->add_option("--gamma", compute_gamma, "surface tension for --pressure");
    compute->add_flag("--strict", compute_strict,
                      "exit nonzero when degenerate faces or invalid vertices occur");

    // compare
    InputOptions compare_in;
    std::string compare_per_vertex;
    bool compare_strict = false;
    CLI::App* compare = app.add_subcommand(
        "compare", "discrepancy between the force-balance and cotangent estimators");
    add_input_flags(compare, compare_in);
    compare->add_option("--per-vertex", compare_per_vertex, "per-vertex discrepancy CSV path");
    compare->add_flag("--strict", compare_strict, "as in compute");

    // convergence
    InputOptions conv_in;
    int conv_min = 1, conv_max = 4;
    std::string conv_output;
    CLI::App* convergence =
        app.add_subcommand("convergence", "error vs analytic reference across refinement levels");
    add_shape_flags(convergence, conv_in);
    convergence->add_option("--min-level", conv_min, "first refinement level (>= 1)");
    convergence->add_option("--max-level", conv_max, "last refinement level");
    convergence->add_option("--output,-o", conv_output, "table path (default: stdout)");

    // flow
    InputOptions flow_in;
    double flow_dt = 1e-3, flow_gamma = 1.0, flow_stop = 0.0;
    int flow_steps = 10;
    std::string flow_mode = "curvature", flow_diag, flow_output;
    CLI::App* flow = app.add_subcommand("flow", "explicit mean-curvature flow");
    add_input_flags(flow, flow_in);
    flow->add_option("--dt", flow_dt, "time step (guideline: < min_edge^2 / 4)");
    flow->add_option("--steps", flow_steps, "number of steps");
    flow->add_option("--gamma", flow_gamma, "surface tension (force mode)");
    flow->add_option("--mode", flow_mode, "curvature or force (identical updates)");
    flow->add_option("--stop-tol", flow_stop, "stop early once max|Hn| drops below this");
    flow->add_option("--diagnostics", flow_diag, "per-step CSV path (default: stdout)");
    flow->add_option("--output,-o", flow_output, "final mesh path");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return run_gen(gen_in, gen_output);
        if (compute->parsed())
            return run_compute(compute_in, compute_estimator, compute_output, pressure_output,
                               compute_gamma, compute_strict);
        if (compare->parsed()) return run_compare(compare_in, compare_per_vertex, compare_strict);
        if (convergence->parsed()) return run_convergence(conv_in, conv_min, conv_max, conv_output);
        if (flow->parsed())
            return run_flow(flow_in, flow_dt, flow_steps, flow_gamma, flow_mode, flow_stop,
                            flow_diag, flow_output);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
