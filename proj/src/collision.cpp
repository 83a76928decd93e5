#include "garmdiff/collision.hpp"

#include <cmath>
#include <limits>

#include "garmdiff/errors.hpp"

namespace garmdiff {

double windingNumber(const TriangleMesh& mesh, const Vec3& p) {
    // van Oosterom-Strackee solid angle, summed over all triangles
    double total = 0.0;
    for (const Face& f : mesh.faces) {
        const Vec3 a = mesh.vertices[f[0]] - p;
        const Vec3 b = mesh.vertices[f[1]] - p;
        const Vec3 c = mesh.vertices[f[2]] - p;
        const double la = a.norm(), lb = b.norm(), lc = c.norm();
        const double numer = a.dot(b.cross(c));
        const double denom = la * lb * lc + a.dot(b) * lc + b.dot(c) * la + c.dot(a) * lb;
        total += 2.0 * std::atan2(numer, denom);
    }
    return total / (4.0 * M_PI);
}

Vec3 closestPointOnTriangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    const Vec3 ab = b - a, ac = c - a, ap = p - a;
    const double d1 = ab.dot(ap), d2 = ac.dot(ap);
    if (d1 <= 0.0 && d2 <= 0.0)
        return a;
    const Vec3 bp = p - b;
    const double d3 = ab.dot(bp), d4 = ac.dot(bp);
    if (d3 >= 0.0 && d4 <= d3)
        return b;
    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0)
        return a + (d1 / (d1 - d3)) * ab;
    const Vec3 cp = p - c;
    const double d5 = ab.dot(cp), d6 = ac.dot(cp);
    if (d6 >= 0.0 && d5 <= d6)
        return c;
    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0)
        return a + (d2 / (d2 - d6)) * ac;
    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0)
        return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);
    const double denom = 1.0 / (va + vb + vc);
    return a + ab * (vb * denom) + ac * (vc * denom);
}

SurfaceQuery querySurface(const TriangleMesh& mesh, const Vec3& p) {
    SurfaceQuery q;
    q.distance = std::numeric_limits<double>::infinity();
    q.point = Vec3::Zero();
    Vec3 normalSum = Vec3::Zero();
    for (const Face& f : mesh.faces) {
        const Vec3& a = mesh.vertices[f[0]];
        const Vec3& b = mesh.vertices[f[1]];
        const Vec3& c = mesh.vertices[f[2]];
        const Vec3 cp = closestPointOnTriangle(p, a, b, c);
        const double d = (p - cp).norm();
        if (d < q.distance - 1e-12) {
            q.distance = d;
            q.point = cp;
            normalSum = (b - a).cross(c - a); // outward for CCW faces, area-weighted
        } else if (d < q.distance + 1e-12) {
            // tie: nearest feature is an edge or a vertex, average face normals
            normalSum += (b - a).cross(c - a);
        }
    }
    const double len = normalSum.norm();
    q.normal = len > 0.0 ? Vec3(normalSum / len) : Vec3(0, 1, 0);
    q.inside = windingNumber(mesh, p) > 0.5;
    return q;
}

namespace {

struct Box {
    Vec3 lo, hi;
};

Box surfaceBox(const TriangleMesh& mesh) {
    Box box{mesh.vertices.front(), mesh.vertices.front()};
    for (const Vec3& v : mesh.vertices) {
        box.lo = box.lo.cwiseMin(v);
        box.hi = box.hi.cwiseMax(v);
    }
    return box;
}

double boxDistance(const Box& box, const Vec3& p) {
    const Vec3 d = (box.lo - p).cwiseMax(p - box.hi).cwiseMax(Vec3::Zero());
    return d.norm();
}

} // namespace

GarmentMesh resolveCollisions(const GarmentMesh& garment, const TriangleMesh& bodySurface, double epsilon) {
    if (bodySurface.faces.empty())
        throw ValidationError("collision surface has no faces");
    if (!isClosedOriented(bodySurface))
        throw ValidationError("collision surface must be closed and consistently oriented");
    const Box box = surfaceBox(bodySurface);
    GarmentMesh result = garment;
    for (int v = 0; v < result.vertexCount(); ++v) {
        // Points farther from the bounding box than epsilon cannot violate.
        if (boxDistance(box, result.vertices[v]) > epsilon)
            continue;
        for (int iter = 0; iter < 16; ++iter) {
            const SurfaceQuery q = querySurface(bodySurface, result.vertices[v]);
            if (q.signedDistance() >= epsilon - 1e-12)
                break;
            result.vertices[v] = q.point + epsilon * q.normal;
            if (iter == 15)
                throw Error("collision push did not converge at vertex " + std::to_string(v));
        }
    }
    return result;
}

} // namespace garmdiff
