#pragma once

#include "garmdiff/body.hpp"
#include "garmdiff/mesh.hpp"

namespace garmdiff {

// Linear blend skinning: each vertex is transformed by the weight-blended
// per-joint skinning matrix. Faces and uv pass through unchanged.
GarmentMesh skin(const GarmentMesh& canonical, const SkinningWeights& weights, const BodyModel& body,
                 const ShapeCoefficients& beta, const Pose& pose);

// Inverse of skin: applies the inverse of the blended transform per vertex.
// Throws SingularityError naming the vertex when |det| of the blended linear
// part is <= 1e-9.
GarmentMesh unpose(const GarmentMesh& posed, const SkinningWeights& weights, const BodyModel& body,
                   const ShapeCoefficients& beta, const Pose& pose);

// The per-vertex blended affine transforms used by both operations.
std::vector<Eigen::Affine3d> blendedTransforms(const SkinningWeights& weights, const BodyModel& body,
                                               const ShapeCoefficients& beta, const Pose& pose, int vertexCount);

} // namespace garmdiff
