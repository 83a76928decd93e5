#include "garmdiff/body.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>

#include <json.hpp>

#include "garmdiff/blobio.hpp"
#include "garmdiff/errors.hpp"

namespace garmdiff {

Pose Pose::identity(int jointCount) {
    Pose p;
    p.rotations.assign(jointCount, Vec3::Zero());
    return p;
}

Eigen::VectorXd Pose::flatten() const {
    Eigen::VectorXd theta(3 * jointCount() + 3);
    for (int j = 0; j < jointCount(); ++j)
        theta.segment<3>(3 * j) = rotations[j];
    theta.tail<3>() = rootTranslation;
    return theta;
}

Pose Pose::unflatten(const Eigen::VectorXd& theta) {
    if (theta.size() % 3 != 0 || theta.size() < 6)
        throw StructuralError("flattened pose length must be 3*joints+3, got " + std::to_string(theta.size()));
    Pose p;
    const int joints = static_cast<int>(theta.size() / 3) - 1;
    p.rotations.resize(joints);
    for (int j = 0; j < joints; ++j)
        p.rotations[j] = theta.segment<3>(3 * j);
    p.rootTranslation = theta.tail<3>();
    return p;
}

void SkinningWeights::validate(int jointCount) const {
    for (size_t v = 0; v < vertexWeights.size(); ++v) {
        double sum = 0.0;
        for (const Entry& e : vertexWeights[v]) {
            if (e.joint < 0 || e.joint >= jointCount)
                throw StructuralError("skinning weight at vertex " + std::to_string(v) + " references joint " +
                                      std::to_string(e.joint));
            if (e.weight < 0.0)
                throw ValidationError("negative skinning weight at vertex " + std::to_string(v));
            sum += e.weight;
        }
        if (std::abs(sum - 1.0) > 1e-6)
            throw ValidationError("skinning weights at vertex " + std::to_string(v) + " sum to " +
                                  std::to_string(sum));
    }
}

void BodyModel::validate() const {
    const int n = jointCount();
    if (n == 0)
        throw ValidationError("body model has no joints");
    if (static_cast<int>(parents.size()) != n)
        throw StructuralError("parents size != joint count");
    int roots = 0;
    for (int j = 0; j < n; ++j) {
        if (parents[j] < 0) {
            ++roots;
        } else if (parents[j] >= j) {
            // topological order: parents precede children
            throw StructuralError("parent index " + std::to_string(parents[j]) + " of joint " + std::to_string(j) +
                                  " must be a lower index");
        }
    }
    if (roots != 1)
        throw StructuralError("joint tree must have exactly one root, found " + std::to_string(roots));
    for (const auto& basis : shapeBasis)
        if (static_cast<int>(basis.size()) != n)
            throw StructuralError("shape basis row size != joint count");
    if (surface && surfaceJointBinding.size() != surface->vertices.size())
        throw StructuralError("surface joint binding size != surface vertex count");
}

std::vector<Vec3> BodyModel::shapedJoints(const ShapeCoefficients& beta) const {
    if (beta.size() != shapeCount())
        throw StructuralError("shape coefficient count " + std::to_string(beta.size()) + " != basis count " +
                              std::to_string(shapeCount()));
    std::vector<Vec3> joints = restJoints;
    for (int s = 0; s < shapeCount(); ++s)
        for (int j = 0; j < jointCount(); ++j)
            joints[j] += beta[s] * shapeBasis[s][j];
    return joints;
}

std::vector<Eigen::Affine3d> BodyModel::forwardKinematics(const ShapeCoefficients& beta, const Pose& pose) const {
    if (pose.jointCount() != jointCount())
        throw StructuralError("pose has " + std::to_string(pose.jointCount()) + " joints, body has " +
                              std::to_string(jointCount()));
    const std::vector<Vec3> joints = shapedJoints(beta);
    std::vector<Eigen::Affine3d> world(jointCount());
    for (int j = 0; j < jointCount(); ++j) {
        const double angle = pose.rotations[j].norm();
        Eigen::Affine3d local = Eigen::Affine3d::Identity();
        if (angle > 0.0)
            local.linear() = Eigen::AngleAxisd(angle, pose.rotations[j] / angle).toRotationMatrix();
        if (parents[j] < 0) {
            local.pretranslate(joints[j] + pose.rootTranslation);
            world[j] = local;
        } else {
            local.pretranslate(joints[j] - joints[parents[j]]);
            world[j] = world[parents[j]] * local;
        }
    }
    return world;
}

std::vector<Eigen::Affine3d> BodyModel::skinningTransforms(const ShapeCoefficients& beta, const Pose& pose) const {
    const std::vector<Vec3> joints = shapedJoints(beta);
    std::vector<Eigen::Affine3d> transforms = forwardKinematics(beta, pose);
    for (int j = 0; j < jointCount(); ++j)
        transforms[j] = transforms[j] * Eigen::Translation3d(-joints[j]);
    return transforms;
}

TriangleMesh BodyModel::posedSurface(const ShapeCoefficients& beta, const Pose& pose) const {
    if (!surface)
        throw ValidationError("body model has no collision surface");
    const std::vector<Eigen::Affine3d> transforms = skinningTransforms(beta, pose);
    TriangleMesh posed = *surface;
    for (size_t v = 0; v < posed.vertices.size(); ++v)
        posed.vertices[v] = transforms[surfaceJointBinding[v]] * posed.vertices[v];
    return posed;
}

void BodyModel::saveJson(const std::string& path) const {
    nlohmann::json doc;
    auto vec3 = [](const Vec3& v) { return nlohmann::json::array({v.x(), v.y(), v.z()}); };
    for (const Vec3& j : restJoints)
        doc["joints"].push_back(vec3(j));
    doc["parents"] = parents;
    doc["names"] = jointNames;
    doc["shape_basis"] = nlohmann::json::array();
    for (const auto& basis : shapeBasis) {
        nlohmann::json row = nlohmann::json::array();
        for (const Vec3& v : basis)
            row.push_back(vec3(v));
        doc["shape_basis"].push_back(row);
    }
    if (surface) {
        const std::filesystem::path p(path);
        const std::string objName = p.stem().string() + "_surface.obj";
        writeObj((p.parent_path() / objName).string(), *surface);
        doc["surface_obj"] = objName;
        doc["surface_binding"] = surfaceJointBinding;
    }
    writeTextFile(path, doc.dump(2) + "\n");
}

BodyModel BodyModel::loadJson(const std::string& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(readTextFile(path));
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad body model JSON " + path + ": " + e.what());
    }
    BodyModel body;
    auto vec3 = [](const nlohmann::json& a) { return Vec3(a.at(0), a.at(1), a.at(2)); };
    for (const auto& j : doc.at("joints"))
        body.restJoints.push_back(vec3(j));
    body.parents = doc.at("parents").get<std::vector<int>>();
    if (doc.contains("names"))
        body.jointNames = doc.at("names").get<std::vector<std::string>>();
    for (const auto& row : doc.at("shape_basis")) {
        std::vector<Vec3> basis;
        for (const auto& v : row)
            basis.push_back(vec3(v));
        body.shapeBasis.push_back(std::move(basis));
    }
    if (doc.contains("surface_obj")) {
        const std::filesystem::path p(path);
        body.surface = readObjTriangles((p.parent_path() / doc.at("surface_obj").get<std::string>()).string());
        body.surfaceJointBinding = doc.at("surface_binding").get<std::vector<int>>();
    }
    body.validate();
    return body;
}

namespace {

// Icosphere scaled into an ellipsoid; closed and outward-oriented.
TriangleMesh makeEllipsoid(const Vec3& center, const Vec3& radii, int subdivisions) {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> verts = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
                               {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
                               {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
    for (Vec3& v : verts)
        v.normalize();
    std::vector<Face> faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                               {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                               {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                               {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    for (int s = 0; s < subdivisions; ++s) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            auto key = std::minmax(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end())
                return it->second;
            verts.push_back(((verts[a] + verts[b]) / 2.0).normalized());
            const int idx = static_cast<int>(verts.size()) - 1;
            midpoint[key] = idx;
            return idx;
        };
        std::vector<Face> next;
        next.reserve(faces.size() * 4);
        for (const Face& f : faces) {
            const int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }
    TriangleMesh mesh;
    mesh.faces = faces;
    mesh.vertices.reserve(verts.size());
    for (const Vec3& v : verts)
        mesh.vertices.push_back(center + v.cwiseProduct(radii));
    return mesh;
}

} // namespace

BodyModel makeDeskBody() {
    BodyModel body;
    body.restJoints = {Vec3(0, 0, 0), Vec3(0, 0.30, 0), Vec3(-0.20, 0.45, 0), Vec3(0.20, 0.45, 0)};
    body.parents = {-1, 0, 1, 1};
    body.jointNames = {"pelvis", "chest", "arm_l", "arm_r"};
    // beta[0]: stature (joints move up), beta[1]: shoulder width
    body.shapeBasis = {
        {Vec3(0, 0, 0), Vec3(0, 0.06, 0), Vec3(0, 0.09, 0), Vec3(0, 0.09, 0)},
        {Vec3(0, 0, 0), Vec3(0, 0, 0), Vec3(-0.05, 0, 0), Vec3(0.05, 0, 0)},
    };
    // Torso ellipsoid between pelvis and chest.
    TriangleMesh torso = makeEllipsoid(Vec3(0, 0.22, 0), Vec3(0.13, 0.28, 0.10), 3);
    body.surfaceJointBinding.resize(torso.vertices.size());
    for (size_t v = 0; v < torso.vertices.size(); ++v)
        body.surfaceJointBinding[v] = torso.vertices[v].y() > 0.30 ? 1 : 0;
    body.surface = std::move(torso);
    body.validate();
    return body;
}

} // namespace garmdiff
