#include "uavdet/prep/calibration.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <fstream>

#include "uavdet/errors.hpp"
#include "uavdet/util/csv.hpp"

namespace uavdet::prep {

namespace {

// Similarity normalization: centroid to origin, mean distance sqrt(2).
Eigen::Matrix3d normalizer(const std::vector<Eigen::Vector2d>& pts) {
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    for (const auto& p : pts) mean += p;
    mean /= static_cast<double>(pts.size());
    double dist = 0;
    for (const auto& p : pts) dist += (p - mean).norm();
    dist /= static_cast<double>(pts.size());
    const double s = (dist > 1e-12) ? std::sqrt(2.0) / dist : 1.0;
    Eigen::Matrix3d t = Eigen::Matrix3d::Identity();
    t(0, 0) = s;
    t(1, 1) = s;
    t(0, 2) = -s * mean.x();
    t(1, 2) = -s * mean.y();
    return t;
}

}  // namespace

HomographyFit estimate_homography(const std::vector<Correspondence>& pairs) {
    if (pairs.size() < 4) {
        throw CalibrationError("homography needs at least 4 correspondences, got " +
                               std::to_string(pairs.size()));
    }
    std::vector<Eigen::Vector2d> src, dst;
    src.reserve(pairs.size());
    dst.reserve(pairs.size());
    for (const auto& p : pairs) {
        src.emplace_back(p.xi, p.yi);
        dst.emplace_back(p.u, p.v);
    }
    const Eigen::Matrix3d t_src = normalizer(src);
    const Eigen::Matrix3d t_dst = normalizer(dst);

    Eigen::MatrixXd a(2 * pairs.size(), 9);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const Eigen::Vector3d s = t_src * Eigen::Vector3d(src[i].x(), src[i].y(), 1.0);
        const Eigen::Vector3d d = t_dst * Eigen::Vector3d(dst[i].x(), dst[i].y(), 1.0);
        a.row(2 * i) << 0, 0, 0, -s.x(), -s.y(), -1, d.y() * s.x(), d.y() * s.y(), d.y();
        a.row(2 * i + 1) << s.x(), s.y(), 1, 0, 0, 0, -d.x() * s.x(), -d.x() * s.y(), -d.x();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    // A collinear configuration leaves the DLT system rank-deficient beyond
    // the expected one-dimensional null space.
    if (sv(7) < 1e-9 * sv(0)) {
        throw CalibrationError("degenerate correspondence configuration (collinear points)");
    }
    Eigen::Matrix<double, 9, 1> hv = svd.matrixV().col(8);
    Eigen::Matrix3d hn;
    hn << hv(0), hv(1), hv(2), hv(3), hv(4), hv(5), hv(6), hv(7), hv(8);
    Eigen::Matrix3d h = t_dst.inverse() * hn * t_src;

    if (std::abs(h(2, 2)) > 1e-12) {
        h /= h(2, 2);
    } else {
        h /= h.norm();  // ground plane through the principal point; keep unit scale
    }

    double se = 0;
    for (const auto& p : pairs) {
        const Eigen::Vector3d m = h * Eigen::Vector3d(p.xi, p.yi, 1.0);
        const double du = m.x() / m.z() - p.u;
        const double dv = m.y() / m.z() - p.v;
        se += du * du + dv * dv;
    }
    HomographyFit fit;
    fit.homography = h;
    fit.reprojection_rms = std::sqrt(se / static_cast<double>(pairs.size()));
    return fit;
}

ProjectionCalibration calibrate_from_scene(const sim::SceneConfig& scene, double depth_norm_m,
                                           int points_per_pose) {
    scene.validate();
    std::vector<Correspondence> pairs;
    const double fov_half = std::atan((scene.width / 2.0) / scene.focal_px);
    for (int pose_i = 0; pose_i < 3; ++pose_i) {
        const double t = scene.duration_s * pose_i / 3.0;
        const sim::CameraPose cam = sim::camera_pose_at(scene, t);
        for (int j = 0; j < points_per_pose; ++j) {
            // Reflector positions spread over the ground ahead of the drone.
            const double fwd = 2.0 + 5.5 * (j + 0.5) / points_per_pose + 0.3 * pose_i;
            const double lat = ((j % 2) ? 1.0 : -1.0) * std::tan(fov_half) * fwd * (0.25 + 0.12 * j);
            double u, v;
            if (!sim::project_point(cam, cam.x + lat, cam.y + fwd, 0.0, &u, &v)) continue;
            if (u < -5 || u > scene.width + 5 || v < -5 || v > scene.height + 5) continue;
            Correspondence c;
            c.xi = (scene.focal_px / -cam.h) * lat;
            c.yi = (scene.focal_px / -cam.h) * fwd;
            c.u = u;
            c.v = v;
            pairs.push_back(c);
        }
    }
    if (pairs.size() < 8) throw CalibrationError("could not sample enough reflector points");
    HomographyFit fit = estimate_homography(pairs);

    ProjectionCalibration cal;
    cal.homography = fit.homography;
    cal.focal_px = scene.focal_px;
    cal.depth_norm_m = depth_norm_m;
    cal.image_width = scene.width;
    cal.image_height = scene.height;
    return cal;
}

void save_calibration(const ProjectionCalibration& cal, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path.string());
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out << fmt_double(cal.homography(r, c)) << "\n";
    out << fmt_double(cal.focal_px) << "\n";
    out << fmt_double(cal.height_prior_m) << "\n";
    out << fmt_double(cal.depth_norm_m) << "\n";
    out << cal.image_width << "\n";
    out << cal.image_height << "\n";
}

ProjectionCalibration load_calibration(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path.string());
    ProjectionCalibration cal;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            if (!(in >> cal.homography(r, c))) throw ValidationError("truncated calibration file");
    if (!(in >> cal.focal_px >> cal.height_prior_m >> cal.depth_norm_m >> cal.image_width >>
          cal.image_height)) {
        throw ValidationError("truncated calibration file");
    }
    if (cal.focal_px <= 0 || std::abs(cal.homography.determinant()) < 1e-15) {
        throw ValidationError("invalid calibration (f <= 0 or singular homography)");
    }
    return cal;
}

}  // namespace uavdet::prep
