#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "garmdiff/mesh.hpp"

namespace garmdiff {

using ShapeCoefficients = Eigen::VectorXd;

// Per-joint axis-angle rotations (radians) plus a root translation.
struct Pose {
    std::vector<Vec3> rotations; // one per joint
    Vec3 rootTranslation = Vec3::Zero();

    static Pose identity(int jointCount);
    int jointCount() const { return static_cast<int>(rotations.size()); }
    // Flattened [rot_0 .. rot_{J-1}, rootTranslation], length 3J+3.
    Eigen::VectorXd flatten() const;
    static Pose unflatten(const Eigen::VectorXd& theta);
};

// Sparse per-vertex skinning weights.
struct SkinningWeights {
    struct Entry {
        int joint;
        double weight;
    };
    std::vector<std::vector<Entry>> vertexWeights;

    int vertexCount() const { return static_cast<int>(vertexWeights.size()); }
    // Nonnegative weights, per-vertex sum within 1e-6 of 1, joint ids in range.
    void validate(int jointCount) const;
};

// Articulated body: a joint tree with a linear per-joint shape basis and an
// optional closed surface for collision tests. Joint rest orientations are
// identity; the rest configuration is the canonical (T-pose) state.
struct BodyModel {
    std::vector<Vec3> restJoints;
    std::vector<int> parents; // -1 for the single root
    std::vector<std::string> jointNames;
    // shapeBasis[s][j] = 3D joint offset of coefficient s at joint j
    std::vector<std::vector<Vec3>> shapeBasis;
    std::optional<TriangleMesh> surface;    // rest state
    std::vector<int> surfaceJointBinding;   // rigid binding, one joint id per surface vertex

    int jointCount() const { return static_cast<int>(restJoints.size()); }
    int shapeCount() const { return static_cast<int>(shapeBasis.size()); }
    void validate() const;

    // J(beta) = restJoints + shapeBasis . beta
    std::vector<Vec3> shapedJoints(const ShapeCoefficients& beta) const;

    // World transform per joint via forward kinematics.
    std::vector<Eigen::Affine3d> forwardKinematics(const ShapeCoefficients& beta, const Pose& pose) const;

    // Skinning matrices: map a point in the canonical (shaped T-pose) state
    // to the posed state, per joint.
    std::vector<Eigen::Affine3d> skinningTransforms(const ShapeCoefficients& beta, const Pose& pose) const;

    // Posed collision surface (rigid per-vertex binding).
    TriangleMesh posedSurface(const ShapeCoefficients& beta, const Pose& pose) const;

    void saveJson(const std::string& path) const; // surface written next to it as <stem>_surface.obj
    static BodyModel loadJson(const std::string& path);
};

// Four-joint desk-scale body: pelvis (root), chest, and two arms, with two
// shape coefficients (stature, shoulder width) and an ellipsoidal torso
// collision surface.
BodyModel makeDeskBody();

// Desk-scale shape vector dimension.
inline constexpr int kDeskShapeCount = 2;

} // namespace garmdiff
