#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uavdet/prep/label.hpp"
#include "uavdet/radar/types.hpp"
#include "uavdet/sim/events.hpp"
#include "uavdet/util/image.hpp"

namespace uavdet::sim {

enum class Difficulty { Easy, Medium, Challenging };
enum class MotionMode { Hover, Fly };

std::string to_string(Difficulty d);
Difficulty difficulty_from_string(const std::string& s);

/// Static scene element: a textured upright billboard anchored to the ground,
/// doubling as a radar reflector.
struct ClutterSpec {
    double x = 0, y = 0;        // ground position [m], y is forward
    double width = 1.0;         // lateral extent [m]
    double height = 1.5;        // vertical extent [m]
    int texture_class = 0;      // 0 stripes, 1 checker, 2 noise
    double contrast = 0.5;      // texture contrast in [0,1]
    double reflectivity = 1.0;  // radar echo amplitude
};

/// Piecewise-linear person trajectory sample.
struct Waypoint {
    double t = 0;  // seconds
    double x = 0;  // lateral ground position [m]
    double y = 0;  // forward ground position [m]
};

struct SceneConfig {
    int width = 64;
    int height = 48;
    double focal_px = 55.0;
    double pitch_deg = 12.0;        // camera down-tilt
    double altitude_m = 2.0;        // base drone altitude
    double bob_amplitude_m = 0.02;  // light hover movement
    double bob_freq_hz = 0.5;
    MotionMode motion = MotionMode::Hover;
    double forward_speed = 0.0;     // m/s, used in Fly mode
    double duration_s = 8.0;
    double frame_rate = 30.0;
    double altitude_rate = 20.0;    // altitude log sample rate [Hz]

    std::vector<Waypoint> person_waypoints;  // empty: generated from seed
    double person_height_m = 1.7;
    double person_width_m = 0.5;
    bool person_present = true;     // false: render background only

    Difficulty difficulty = Difficulty::Easy;
    std::vector<ClutterSpec> clutter;  // empty: generated from difficulty+seed

    double dvs_threshold = 0.18;
    double rgb_noise = 0.01;        // camera noise stddev (8-bit domain, normalized)
    double label_jitter = 0.0;      // optional annotation noise, fraction of box size

    double world_half_width = 10.0;  // |x| bound for trajectories [m]
    double world_depth = 13.0;       // forward bound [m]

    std::uint64_t seed = 1;

    void validate() const;  // throws ConfigError / GenerationError
};

/// One synthetic multi-modal recording, time-aligned across streams.
struct Recording {
    SceneConfig config;  // echo
    std::vector<ImageU8> rgb;                                   // per frame
    std::vector<DvsEvent> events;                               // sorted by time
    std::vector<std::vector<radar::TargetTruth>> radar_truths;  // per frame
    std::vector<std::pair<std::int64_t, double>> altitude;      // (t_us, h_m)
    std::vector<prep::FrameLabel> labels;                       // per frame

    int frame_count() const { return static_cast<int>(rgb.size()); }
    std::int64_t frame_time_us(int n) const {
        return static_cast<std::int64_t>(std::llround(n * 1e6 / config.frame_rate));
    }
};

/// Renders a deterministic recording: person and clutter billboards projected
/// through a pitched pinhole camera, events from the luminance video, radar
/// truths with relative radial velocities, ground-truth boxes and presence.
Recording render_scene(const SceneConfig& cfg);

/// Drone pose helpers shared with calibration (world frame: x right,
/// y forward, z up; camera pitched down about x).
struct CameraPose {
    double x = 0, y = 0, h = 0;  // position
    double pitch_rad = 0;
    double focal_px = 0;
    int width = 0, height = 0;
};

CameraPose camera_pose_at(const SceneConfig& cfg, double t);

/// Projects a world point; returns false when behind the camera.
bool project_point(const CameraPose& cam, double wx, double wy, double wz, double* u, double* v);

}  // namespace uavdet::sim
