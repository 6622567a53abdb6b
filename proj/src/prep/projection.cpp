#include "uavdet/prep/projection.hpp"

#include <algorithm>
#include <cmath>

#include "uavdet/errors.hpp"

namespace uavdet::prep {

void intermediate_coords(const radar::RadarDetection& det, double altitude_m, double focal_px,
                         double* xi, double* yi) {
    const double theta = (90.0 - det.azimuth_deg) * M_PI / 180.0;
    const double s = focal_px / -altitude_m;
    *xi = s * det.range_m * std::cos(theta);
    *yi = s * det.range_m * std::sin(theta);
}

std::vector<ProjectedPoint> project_detections(const std::vector<radar::RadarDetection>& dets,
                                               double altitude_m, const ProjectionCalibration& cal) {
    if (!(altitude_m > 0)) throw ValidationError("altitude must be positive");
    std::vector<ProjectedPoint> out;
    out.reserve(dets.size());
    for (const auto& det : dets) {
        double xi, yi;
        intermediate_coords(det, altitude_m, cal.focal_px, &xi, &yi);
        const Eigen::Vector3d m = cal.homography * Eigen::Vector3d(xi, yi, 1.0);
        if (m.z() <= 1e-12) continue;  // behind the mapping's horizon
        ProjectedPoint p;
        p.u = m.x() / m.z();
        p.v = m.y() / m.z();
        const double theta = (90.0 - det.azimuth_deg) * M_PI / 180.0;
        p.depth_norm = std::clamp(det.range_m * std::sin(theta) / cal.depth_norm_m, 0.0, 1.0);
        if (p.u < 0 || p.u > cal.image_width - 1 || p.v < 0 || p.v > cal.image_height - 1) continue;
        out.push_back(p);
    }
    return out;
}

std::vector<double> rasterize_columns(const std::vector<ProjectedPoint>& points,
                                      const ProjectionCalibration& cal, int column_width_px) {
    const int w = cal.image_width, h = cal.image_height;
    std::vector<double> channel(static_cast<std::size_t>(w) * h, 0.0);
    const int half = std::max(0, (column_width_px - 1) / 2);
    for (const auto& p : points) {
        const double depth_m = p.depth_norm * cal.depth_norm_m;
        const int rise =
            (depth_m > 0.05)
                ? std::max(1, static_cast<int>(std::lround(cal.focal_px * cal.height_prior_m / depth_m)))
                : h;
        const int u0 = static_cast<int>(std::lround(p.u)) - half;
        const int v_base = static_cast<int>(std::lround(p.v));
        const int v_top = v_base - rise + 1;  // column covers `rise` rows
        for (int x = std::max(0, u0); x <= std::min(w - 1, u0 + 2 * half); ++x) {
            for (int y = std::max(0, v_top); y <= std::min(h - 1, v_base); ++y) {
                double& cell = channel[static_cast<std::size_t>(y) * w + x];
                cell = (cell == 0.0) ? p.depth_norm : std::min(cell, p.depth_norm);
            }
        }
    }
    return channel;
}

}  // namespace uavdet::prep
