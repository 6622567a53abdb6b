#pragma once

#include <map>

#include "uavdet/prep/calibration.hpp"
#include "uavdet/prep/tensor.hpp"
#include "uavdet/radar/chain.hpp"
#include "uavdet/sim/scene.hpp"

namespace uavdet::prep {

struct PreprocessOptions {
    std::int64_t dvs_window_us = 10000;  // accumulation window
    radar::CfarParams cfar;
    int column_width_px = 3;
    std::uint64_t radar_noise_seed = 0;  // 0: derive from the recording seed
};

struct PreprocessedRecording {
    int width = 0;
    int height = 0;
    std::vector<InputTensor> tensors;
    std::vector<FrameLabel> labels;
    std::map<int, std::vector<radar::RadarDetection>> detections;  // post Doppler filter
};

/// Linear interpolation of the altitude log at an arbitrary timestamp.
double altitude_at(const std::vector<std::pair<std::int64_t, double>>& samples, std::int64_t t_us);

/// Runs the whole per-frame conversion: DVS accumulation over
/// [t_n, t_n + window), radar chain on the frame's target truths, Doppler
/// clutter rejection, projection to image columns, tensor assembly.
PreprocessedRecording preprocess_recording(const sim::Recording& rec, const radar::RadarConfig& rcfg,
                                           const ProjectionCalibration& cal,
                                           const PreprocessOptions& opt = {});

}  // namespace uavdet::prep
