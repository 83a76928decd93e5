#include "garmdiff/skinning.hpp"

#include <cmath>

#include "garmdiff/errors.hpp"

namespace garmdiff {

std::vector<Eigen::Affine3d> blendedTransforms(const SkinningWeights& weights, const BodyModel& body,
                                               const ShapeCoefficients& beta, const Pose& pose, int vertexCount) {
    if (weights.vertexCount() != vertexCount)
        throw StructuralError("skinning weights for " + std::to_string(weights.vertexCount()) +
                              " vertices, mesh has " + std::to_string(vertexCount));
    weights.validate(body.jointCount());
    const std::vector<Eigen::Affine3d> joint = body.skinningTransforms(beta, pose);
    std::vector<Eigen::Affine3d> blended(vertexCount);
    for (int v = 0; v < vertexCount; ++v) {
        Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
        for (const SkinningWeights::Entry& e : weights.vertexWeights[v])
            m += e.weight * joint[e.joint].matrix();
        blended[v].matrix() = m;
    }
    return blended;
}

GarmentMesh skin(const GarmentMesh& canonical, const SkinningWeights& weights, const BodyModel& body,
                 const ShapeCoefficients& beta, const Pose& pose) {
    const std::vector<Eigen::Affine3d> blended =
        blendedTransforms(weights, body, beta, pose, canonical.vertexCount());
    GarmentMesh posed = canonical;
    for (int v = 0; v < canonical.vertexCount(); ++v)
        posed.vertices[v] = blended[v] * canonical.vertices[v];
    return posed;
}

GarmentMesh unpose(const GarmentMesh& posed, const SkinningWeights& weights, const BodyModel& body,
                   const ShapeCoefficients& beta, const Pose& pose) {
    const std::vector<Eigen::Affine3d> blended = blendedTransforms(weights, body, beta, pose, posed.vertexCount());
    GarmentMesh canonical = posed;
    for (int v = 0; v < posed.vertexCount(); ++v) {
        const Eigen::Matrix3d linear = blended[v].linear();
        if (std::abs(linear.determinant()) <= 1e-9)
            throw SingularityError("blended skinning transform is singular", v);
        const Eigen::Matrix3d inv = linear.inverse();
        canonical.vertices[v] = inv * (posed.vertices[v] - blended[v].translation());
    }
    return canonical;
}

} // namespace garmdiff
