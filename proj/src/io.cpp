#include "meancurv/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "meancurv/error.hpp"

namespace meancurv {

namespace {

std::string format(const char* fmt, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), fmt, args...);
    return buf;
}

double parse_double(const std::string& token, std::size_t line, const char* what) {
    const char* begin = token.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw Error(ErrorKind::parse,
                    format("line %zu: malformed number '%s' in %s", line, token.c_str(), what));
    return value;
}

long parse_index(const std::string& token, std::size_t line) {
    const char* begin = token.c_str();
    char* end = nullptr;
    const long value = std::strtol(begin, &end, 10);
    if (end == begin)
        throw Error(ErrorKind::parse,
                    format("line %zu: malformed face index '%s'", line, token.c_str()));
    return value;
}

void fan_triangulate(const std::vector<VertexId>& poly, std::vector<Tri>& faces) {
    for (std::size_t i = 1; i + 1 < poly.size(); ++i)
        faces.push_back({poly[0], poly[i], poly[i + 1]});
}

void check_face_range(const std::vector<Tri>& faces, std::size_t nv) {
    for (std::size_t f = 0; f < faces.size(); ++f)
        for (VertexId v : faces[f])
            if (v >= nv)
                throw Error(ErrorKind::structural,
                            format("face %zu references vertex %u but only %zu vertices exist", f,
                                   v, nv));
}

const char* kDigits17 = "%.17g";

void put_double(std::ostream& out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), kDigits17, v);
    out << buf;
}

} // namespace

ParsedMesh read_obj(std::istream& in) {
    ParsedMesh mesh;
    std::string line;
    std::size_t line_no = 0;
    std::vector<VertexId> poly;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;

        if (head == "v") {
            std::string sx, sy, sz;
            if (!(ls >> sx >> sy >> sz))
                throw Error(ErrorKind::parse,
                            format("line %zu: vertex needs three coordinates", line_no));
            mesh.positions.push_back({parse_double(sx, line_no, "vertex"),
                                      parse_double(sy, line_no, "vertex"),
                                      parse_double(sz, line_no, "vertex")});
        } else if (head == "f") {
            poly.clear();
            std::string token;
            while (ls >> token) {
                // strip /vt/vn suffixes
                if (const auto slash = token.find('/'); slash != std::string::npos)
                    token.resize(slash);
                const long idx = parse_index(token, line_no);
                if (idx <= 0)
                    throw Error(ErrorKind::structural,
                                format("line %zu: face index %ld (OBJ indices are 1-based and "
                                       "positive)",
                                       line_no, idx));
                poly.push_back(static_cast<VertexId>(idx - 1));
            }
            if (poly.size() < 3)
                throw Error(ErrorKind::structural,
                            format("line %zu: face needs at least 3 vertices", line_no));
            if (poly.size() > 3)
                mesh.warnings.push_back(format("line %zu: %zu-gon fan-triangulated", line_no,
                                               poly.size()));
            fan_triangulate(poly, mesh.faces);
        }
        // every other directive (vn, vt, usemtl, o, g, s, ...) is ignored
    }
    check_face_range(mesh.faces, mesh.positions.size());
    return mesh;
}

ParsedMesh read_off(std::istream& in) {
    // OFF is whitespace-structured; read token-wise, skipping # comments.
    std::size_t line_no = 1;
    auto next_token = [&](std::string& out) -> bool {
        out.clear();
        int c;
        while ((c = in.get()) != EOF) {
            if (c == '#') {
                while ((c = in.get()) != EOF && c != '\n') {}
                if (c == '\n') ++line_no;
                continue;
            }
            if (c == '\n') {
                ++line_no;
                continue;
            }
            if (std::isspace(c)) continue;
            break;
        }
        if (c == EOF) return false;
        do {
            out.push_back(static_cast<char>(c));
            c = in.get();
        } while (c != EOF && !std::isspace(c));
        if (c == '\n') ++line_no;
        return true;
    };
    auto need_token = [&](std::string& out, const char* section) {
        if (!next_token(out))
            throw Error(ErrorKind::structural, format("OFF truncated: missing %s", section));
    };

    std::string tok;
    need_token(tok, "header");
    if (tok != "OFF") throw Error(ErrorKind::parse, "not an OFF file (header missing)");

    need_token(tok, "vertex count");
    const long nv = parse_index(tok, line_no);
    need_token(tok, "face count");
    const long nf = parse_index(tok, line_no);
    need_token(tok, "edge count");
    (void)parse_index(tok, line_no); // edge count unused
    if (nv < 0 || nf < 0) throw Error(ErrorKind::structural, "OFF: negative element count");

    ParsedMesh mesh;
    mesh.positions.reserve(static_cast<std::size_t>(nv));
    for (long i = 0; i < nv; ++i) {
        Vec3 p;
        for (double* coord : {&p.x, &p.y, &p.z}) {
            if (!next_token(tok))
                throw Error(ErrorKind::structural,
                            format("OFF truncated in vertex list: expected %ld vertices, got %ld",
                                   nv, i));
            *coord = parse_double(tok, line_no, "vertex");
        }
        mesh.positions.push_back(p);
    }

    std::vector<VertexId> poly;
    for (long f = 0; f < nf; ++f) {
        if (!next_token(tok))
            throw Error(ErrorKind::structural,
                        format("OFF truncated in face list: expected %ld faces, got %ld", nf, f));
        const long n = parse_index(tok, line_no);
        if (n < 3)
            throw Error(ErrorKind::structural,
                        format("OFF face %ld has %ld vertices (need at least 3)", f, n));
        poly.clear();
        for (long c = 0; c < n; ++c) {
            if (!next_token(tok))
                throw Error(ErrorKind::structural,
                            format("OFF truncated inside face %ld", f));
            const long idx = parse_index(tok, line_no);
            if (idx < 0 || idx >= nv)
                throw Error(ErrorKind::structural,
                            format("OFF face %ld references vertex %ld of %ld", f, idx, nv));
            poly.push_back(static_cast<VertexId>(idx));
        }
        if (poly.size() > 3)
            mesh.warnings.push_back(format("OFF face %ld: %zu-gon fan-triangulated", f,
                                           poly.size()));
        fan_triangulate(poly, mesh.faces);
    }
    return mesh;
}

ParsedMesh read_mesh_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io, "cannot open " + path);
    std::string ext;
    if (const auto pos = path.rfind('.'); pos != std::string::npos) ext = path.substr(pos);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".obj") return read_obj(in);
    if (ext == ".off") return read_off(in);
    throw Error(ErrorKind::invalid_argument, "unsupported mesh format: " + path);
}

void write_obj(std::ostream& out, const Mesh& mesh) {
    for (const Vec3& p : mesh.positions()) {
        out << "v ";
        put_double(out, p.x);
        out << ' ';
        put_double(out, p.y);
        out << ' ';
        put_double(out, p.z);
        out << '\n';
    }
    for (const Tri& t : mesh.faces())
        out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

void write_off(std::ostream& out, const Mesh& mesh) {
    out << "OFF\n"
        << mesh.vertex_count() << ' ' << mesh.face_count() << ' ' << mesh.edge_count() << '\n';
    for (const Vec3& p : mesh.positions()) {
        put_double(out, p.x);
        out << ' ';
        put_double(out, p.y);
        out << ' ';
        put_double(out, p.z);
        out << '\n';
    }
    for (const Tri& t : mesh.faces())
        out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void write_mesh_file(const std::string& path, const Mesh& mesh) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::io, "cannot write " + path);
    std::string ext;
    if (const auto pos = path.rfind('.'); pos != std::string::npos) ext = path.substr(pos);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".off")
        write_off(out, mesh);
    else
        write_obj(out, mesh);
}

void write_report(std::ostream& out, const Mesh& mesh, const CurvatureField& field,
                  const ReportReference& ref) {
    const bool with_ref =
        ref.h_ref != nullptr && ref.h_ref->size() == mesh.vertex_count();
    out << "vertex,x,y,z,Hn_x,Hn_y,Hn_z,H,A_mixed,valid";
    if (with_ref) out << ",H_ref,abs_error,rel_error";
    out << '\n';

    for (std::size_t i = 0; i < mesh.vertex_count(); ++i) {
        const Vec3& p = mesh.positions()[i];
        out << i << ',';
        put_double(out, p.x);
        out << ',';
        put_double(out, p.y);
        out << ',';
        put_double(out, p.z);
        out << ',';
        if (field.valid[i]) {
            put_double(out, field.hn[i].x);
            out << ',';
            put_double(out, field.hn[i].y);
            out << ',';
            put_double(out, field.hn[i].z);
            out << ',';
            put_double(out, field.h[i]);
            out << ',';
            put_double(out, field.mixed_area[i]);
            out << ",true";
        } else {
            out << ",,,,,false"; // empty numeric fields, not zeros
        }
        if (with_ref) {
            out << ',';
            put_double(out, (*ref.h_ref)[i]);
            out << ',';
            if (field.valid[i]) {
                const double abs_err = std::abs(field.h[i] - (*ref.h_ref)[i]);
                put_double(out, abs_err);
                out << ',';
                if ((*ref.h_ref)[i] != 0.0)
                    put_double(out, abs_err / std::abs((*ref.h_ref)[i]));
            } else {
                out << ',';
            }
        }
        out << '\n';
    }
}

} // namespace meancurv
