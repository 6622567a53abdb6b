#pragma once

#include <vector>

#include "uavdet/prep/calibration.hpp"
#include "uavdet/radar/types.hpp"

namespace uavdet::prep {

/// Radar detection mapped onto the image plane.
struct ProjectedPoint {
    double u = 0, v = 0;       // pixels
    double depth_norm = 0;     // forward depth / depth_norm_m, in [0,1]
};

/// Altitude-scaled intermediate representation of one detection:
/// (f / -h) * (r cos(theta), r sin(theta)) with theta measured from the
/// antenna-array axis, i.e. theta = 90 deg - azimuth-from-boresight.
void intermediate_coords(const radar::RadarDetection& det, double altitude_m, double focal_px,
                         double* xi, double* yi);

/// Maps detections through the intermediate plane and the session homography
/// to image pixels. Off-image points are dropped, not clipped. Throws
/// ValidationError for altitude <= 0.
std::vector<ProjectedPoint> project_detections(const std::vector<radar::RadarDetection>& dets,
                                               double altitude_m, const ProjectionCalibration& cal);

/// Renders projected detections as vertical columns: width column_width_px,
/// extending upward from the anchor by focal * height_prior / metric depth,
/// clipped to the image. Pixels hold the depth value; overlaps keep the
/// smaller (nearer) depth.
std::vector<double> rasterize_columns(const std::vector<ProjectedPoint>& points,
                                      const ProjectionCalibration& cal, int column_width_px = 3);

}  // namespace uavdet::prep
