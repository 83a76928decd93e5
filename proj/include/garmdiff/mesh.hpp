#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace garmdiff {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;
using Face = std::array<int, 3>;

// Triangle mesh with one UV coordinate per vertex. All designs of a garment
// family share faces and uv; only vertex positions vary.
struct GarmentMesh {
    std::vector<Vec3> vertices; // meters
    std::vector<Face> faces;
    std::vector<Vec2> uv; // in [0,1]^2, same count as vertices

    int vertexCount() const { return static_cast<int>(vertices.size()); }
    int faceCount() const { return static_cast<int>(faces.size()); }
    bool sameTopology(const GarmentMesh& other) const;
};

// Positions + faces only, used for collision surfaces.
struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<Face> faces;
};

// Checks face index ranges, UV triangle non-degeneracy (area > 1e-12) and
// pairwise UV overlap (intersection area <= 1e-9 of chart area). Throws
// StructuralError / ValidationError on violation.
void validateGarmentMesh(const GarmentMesh& mesh, bool checkUvOverlap = false);

// Every edge used by exactly two triangles, once in each direction.
bool isClosedOriented(const TriangleMesh& mesh);

double uvTriangleArea(const Vec2& a, const Vec2& b, const Vec2& c);

// OBJ I/O. Writes v/vt/f records with `f v/vt` faces (1-based); vertex i
// always pairs with vt i so UVs survive a round-trip. Reading requires vt
// and v/vt faces for GarmentMesh; TriangleMesh reading accepts plain `f v`.
void writeObj(const std::string& path, const GarmentMesh& mesh);
GarmentMesh readObj(const std::string& path);
void writeObj(const std::string& path, const TriangleMesh& mesh);
TriangleMesh readObjTriangles(const std::string& path);

} // namespace garmdiff
