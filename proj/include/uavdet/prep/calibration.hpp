#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <vector>

#include "uavdet/sim/scene.hpp"

namespace uavdet::prep {

/// Session extrinsics: homography from the altitude-scaled intermediate
/// radar plane to image pixels, plus the constants the projection needs.
struct ProjectionCalibration {
    Eigen::Matrix3d homography = Eigen::Matrix3d::Identity();  // normalized, M(2,2) = 1
    double focal_px = 0;
    double height_prior_m = 1.5;  // assumed object height for radar columns
    double depth_norm_m = 0;      // depth normalization constant (radar d_max)
    int image_width = 0;
    int image_height = 0;
};

/// One calibration correspondence: intermediate-plane point and its image.
struct Correspondence {
    double xi = 0, yi = 0;  // intermediate coordinates
    double u = 0, v = 0;    // image pixels
};

struct HomographyFit {
    Eigen::Matrix3d homography;
    double reprojection_rms = 0;
};

/// Normalized direct linear transform. Needs >= 4 non-degenerate
/// correspondences (8+ in practice); throws CalibrationError for
/// under-determined or collinear configurations.
HomographyFit estimate_homography(const std::vector<Correspondence>& pairs);

/// Samples exact ground-point correspondences from the scene geometry at
/// several drone poses and fits the homography, mirroring an offline
/// corner-reflector calibration session.
ProjectionCalibration calibrate_from_scene(const sim::SceneConfig& scene, double depth_norm_m,
                                           int points_per_pose = 6);

/// Calibration file: 9 homography values (row major), then focal length,
/// height prior, depth normalization constant, image width and height.
void save_calibration(const ProjectionCalibration& cal, const std::filesystem::path& path);
ProjectionCalibration load_calibration(const std::filesystem::path& path);

}  // namespace uavdet::prep
