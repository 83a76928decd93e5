#pragma once

#include "garmdiff/mesh.hpp"

namespace garmdiff {

struct SurfaceQuery {
    double distance;   // unsigned, to the nearest surface point
    Vec3 point;        // nearest point on the surface
    Vec3 normal;       // outward pseudo-normal at that point
    bool inside;       // generalized winding number > 0.5
    double signedDistance() const { return inside ? -distance : distance; }
};

// Generalized winding number of `p` with respect to the mesh (1 well inside
// a closed component, 0 well outside).
double windingNumber(const TriangleMesh& mesh, const Vec3& p);

// Closest point on a single triangle.
Vec3 closestPointOnTriangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

// Brute-force nearest-point query over all triangles plus an inside test.
// Requires a closed, outward-oriented mesh for the sign to be meaningful.
SurfaceQuery querySurface(const TriangleMesh& mesh, const Vec3& p);

// Moves every vertex currently inside (or within epsilon of) the body
// surface to epsilon outside along the nearest surface normal; repeats the
// push until the signed distance clears epsilon (non-convex surfaces can
// need more than one application). Vertices already clear are untouched.
// Throws ValidationError when the surface is not closed and oriented.
GarmentMesh resolveCollisions(const GarmentMesh& garment, const TriangleMesh& bodySurface, double epsilon);

} // namespace garmdiff
