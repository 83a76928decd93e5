#include "garmdiff/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "garmdiff/errors.hpp"

namespace garmdiff {

bool GarmentMesh::sameTopology(const GarmentMesh& other) const {
    return vertices.size() == other.vertices.size() && faces == other.faces;
}

double uvTriangleArea(const Vec2& a, const Vec2& b, const Vec2& c) {
    return 0.5 * std::abs((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

namespace {

// Sutherland-Hodgman clip of triangle p against triangle q, then shoelace.
double convexPolyArea(const std::vector<Vec2>& poly) {
    double s = 0.0;
    for (size_t i = 0; i < poly.size(); ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % poly.size()];
        s += a.x() * b.y() - b.x() * a.y();
    }
    return 0.5 * std::abs(s);
}

double triTriIntersectionArea(const std::array<Vec2, 3>& p, const std::array<Vec2, 3>& q) {
    // Orient q counter-clockwise.
    std::array<Vec2, 3> cq = q;
    if ((cq[1].x() - cq[0].x()) * (cq[2].y() - cq[0].y()) - (cq[2].x() - cq[0].x()) * (cq[1].y() - cq[0].y()) < 0)
        std::swap(cq[1], cq[2]);
    std::vector<Vec2> poly(p.begin(), p.end());
    for (int e = 0; e < 3 && !poly.empty(); ++e) {
        const Vec2& a = cq[e];
        const Vec2& b = cq[(e + 1) % 3];
        const Vec2 dir = b - a;
        std::vector<Vec2> next;
        auto side = [&](const Vec2& v) { return dir.x() * (v.y() - a.y()) - dir.y() * (v.x() - a.x()); };
        for (size_t i = 0; i < poly.size(); ++i) {
            const Vec2& cur = poly[i];
            const Vec2& nxt = poly[(i + 1) % poly.size()];
            const double sc = side(cur), sn = side(nxt);
            if (sc >= 0)
                next.push_back(cur);
            if ((sc > 0 && sn < 0) || (sc < 0 && sn > 0)) {
                const double t = sc / (sc - sn);
                next.push_back(cur + t * (nxt - cur));
            }
        }
        poly = std::move(next);
    }
    if (poly.size() < 3)
        return 0.0;
    return convexPolyArea(poly);
}

} // namespace

void validateGarmentMesh(const GarmentMesh& mesh, bool checkUvOverlap) {
    const int n = mesh.vertexCount();
    if (mesh.uv.size() != mesh.vertices.size())
        throw StructuralError("uv count (" + std::to_string(mesh.uv.size()) + ") != vertex count (" +
                              std::to_string(mesh.vertices.size()) + ")");
    for (const Face& f : mesh.faces)
        for (int k = 0; k < 3; ++k)
            if (f[k] < 0 || f[k] >= n)
                throw StructuralError("face index " + std::to_string(f[k]) + " out of range [0," +
                                      std::to_string(n) + ")");
    double chartArea = 0.0;
    for (const Face& f : mesh.faces) {
        const double a = uvTriangleArea(mesh.uv[f[0]], mesh.uv[f[1]], mesh.uv[f[2]]);
        if (a <= 1e-12)
            throw ValidationError("degenerate UV triangle (area " + std::to_string(a) + ")");
        chartArea += a;
    }
    if (checkUvOverlap) {
        for (size_t i = 0; i < mesh.faces.size(); ++i) {
            const Face& fi = mesh.faces[i];
            const std::array<Vec2, 3> ti{mesh.uv[fi[0]], mesh.uv[fi[1]], mesh.uv[fi[2]]};
            Vec2 loi = ti[0].cwiseMin(ti[1]).cwiseMin(ti[2]);
            Vec2 hii = ti[0].cwiseMax(ti[1]).cwiseMax(ti[2]);
            for (size_t j = i + 1; j < mesh.faces.size(); ++j) {
                const Face& fj = mesh.faces[j];
                // faces sharing a vertex meet along shared geometry, skip
                bool shared = false;
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b)
                        if (fi[a] == fj[b])
                            shared = true;
                if (shared)
                    continue;
                const std::array<Vec2, 3> tj{mesh.uv[fj[0]], mesh.uv[fj[1]], mesh.uv[fj[2]]};
                Vec2 loj = tj[0].cwiseMin(tj[1]).cwiseMin(tj[2]);
                Vec2 hij = tj[0].cwiseMax(tj[1]).cwiseMax(tj[2]);
                if (loj.x() > hii.x() || loi.x() > hij.x() || loj.y() > hii.y() || loi.y() > hij.y())
                    continue;
                const double inter = triTriIntersectionArea(ti, tj);
                if (inter > 1e-9 * chartArea)
                    throw ValidationError("UV triangles " + std::to_string(i) + " and " + std::to_string(j) +
                                          " overlap (area " + std::to_string(inter) + ")");
            }
        }
    }
}

bool isClosedOriented(const TriangleMesh& mesh) {
    std::map<std::pair<int, int>, int> directed;
    for (const Face& f : mesh.faces) {
        for (int k = 0; k < 3; ++k) {
            const int a = f[k], b = f[(k + 1) % 3];
            if (a == b)
                return false;
            if (++directed[{a, b}] > 1)
                return false;
        }
    }
    for (const auto& [edge, count] : directed) {
        auto rev = directed.find({edge.second, edge.first});
        if (rev == directed.end() || rev->second != 1)
            return false;
    }
    return true;
}

namespace {

void writeVertex(std::string& out, const char* tag, const double* values, int n) {
    char buf[128];
    out += tag;
    for (int i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof(buf), " %.9g", values[i]);
        out += buf;
    }
    out += '\n';
}

} // namespace

void writeObj(const std::string& path, const GarmentMesh& mesh) {
    std::string out;
    out.reserve(mesh.vertices.size() * 48 + mesh.faces.size() * 24);
    for (const Vec3& v : mesh.vertices)
        writeVertex(out, "v", v.data(), 3);
    for (const Vec2& t : mesh.uv)
        writeVertex(out, "vt", t.data(), 2);
    char buf[96];
    for (const Face& f : mesh.faces) {
        std::snprintf(buf, sizeof(buf), "f %d/%d %d/%d %d/%d\n", f[0] + 1, f[0] + 1, f[1] + 1, f[1] + 1, f[2] + 1,
                      f[2] + 1);
        out += buf;
    }
    std::ofstream stream(path, std::ios::binary | std::ios::trunc);
    if (!stream)
        throw IoError("cannot open for writing: " + path);
    stream.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!stream)
        throw IoError("short write: " + path);
}

void writeObj(const std::string& path, const TriangleMesh& mesh) {
    std::string out;
    for (const Vec3& v : mesh.vertices)
        writeVertex(out, "v", v.data(), 3);
    char buf[64];
    for (const Face& f : mesh.faces) {
        std::snprintf(buf, sizeof(buf), "f %d %d %d\n", f[0] + 1, f[1] + 1, f[2] + 1);
        out += buf;
    }
    std::ofstream stream(path, std::ios::binary | std::ios::trunc);
    if (!stream)
        throw IoError("cannot open for writing: " + path);
    stream.write(out.data(), static_cast<std::streamsize>(out.size()));
}

namespace {

struct ObjData {
    std::vector<Vec3> v;
    std::vector<Vec2> vt;
    std::vector<std::array<std::pair<int, int>, 3>> faces; // (v idx, vt idx or -1), 0-based
};

ObjData parseObj(const std::string& path, bool requireUv) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open: " + path);
    ObjData data;
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::istringstream iss(line);
        std::string tag;
        if (!(iss >> tag) || tag[0] == '#')
            continue;
        if (tag == "v") {
            double x, y, z;
            if (!(iss >> x >> y >> z))
                throw IoError(path + ":" + std::to_string(lineNo) + ": malformed vertex");
            data.v.emplace_back(x, y, z);
        } else if (tag == "vt") {
            double u, v;
            if (!(iss >> u >> v))
                throw IoError(path + ":" + std::to_string(lineNo) + ": malformed texture coordinate");
            data.vt.emplace_back(u, v);
        } else if (tag == "f") {
            std::array<std::pair<int, int>, 3> face;
            for (int k = 0; k < 3; ++k) {
                std::string corner;
                if (!(iss >> corner))
                    throw IoError(path + ":" + std::to_string(lineNo) + ": face needs 3 corners");
                int vi = 0, ti = -1;
                const size_t slash = corner.find('/');
                if (slash == std::string::npos) {
                    vi = std::stoi(corner);
                } else {
                    vi = std::stoi(corner.substr(0, slash));
                    std::string rest = corner.substr(slash + 1);
                    const size_t slash2 = rest.find('/');
                    if (slash2 != std::string::npos)
                        rest = rest.substr(0, slash2);
                    if (!rest.empty())
                        ti = std::stoi(rest);
                }
                if (vi <= 0 || (ti == 0))
                    throw IoError(path + ":" + std::to_string(lineNo) + ": indices must be positive 1-based");
                face[k] = {vi - 1, ti > 0 ? ti - 1 : -1};
            }
            std::string extra;
            if (iss >> extra)
                throw IoError(path + ":" + std::to_string(lineNo) + ": only triangles are supported");
            data.faces.push_back(face);
            if (requireUv && (face[0].second < 0 || face[1].second < 0 || face[2].second < 0))
                throw IoError(path + ":" + std::to_string(lineNo) + ": face without vt index (v/vt form required)");
        }
    }
    return data;
}

} // namespace

GarmentMesh readObj(const std::string& path) {
    ObjData data = parseObj(path, /*requireUv=*/true);
    GarmentMesh mesh;
    mesh.vertices = data.v;
    mesh.uv.assign(data.v.size(), Vec2::Zero());
    std::vector<bool> seen(data.v.size(), false);
    for (const auto& face : data.faces) {
        Face f;
        for (int k = 0; k < 3; ++k) {
            const auto [vi, ti] = face[k];
            if (vi >= static_cast<int>(data.v.size()) || ti >= static_cast<int>(data.vt.size()))
                throw IoError(path + ": face index out of range");
            if (seen[vi] && (mesh.uv[vi] - data.vt[ti]).norm() > 1e-12)
                throw IoError(path + ": vertex " + std::to_string(vi + 1) +
                              " used with two different vt records; one uv per vertex required");
            mesh.uv[vi] = data.vt[ti];
            seen[vi] = true;
            f[k] = vi;
        }
        mesh.faces.push_back(f);
    }
    return mesh;
}

TriangleMesh readObjTriangles(const std::string& path) {
    ObjData data = parseObj(path, /*requireUv=*/false);
    TriangleMesh mesh;
    mesh.vertices = data.v;
    for (const auto& face : data.faces) {
        for (int k = 0; k < 3; ++k)
            if (face[k].first >= static_cast<int>(data.v.size()))
                throw IoError(path + ": face index out of range");
        mesh.faces.push_back({face[0].first, face[1].first, face[2].first});
    }
    return mesh;
}

} // namespace garmdiff
