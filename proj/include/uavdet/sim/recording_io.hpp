#pragma once

#include <filesystem>

#include "uavdet/sim/scene.hpp"

namespace uavdet::sim {

/// Recording directory layout (also the ingestion contract for externally
/// recorded data):
///   rgb/%06d.png      8-bit RGB frames
///   events.csv        t_us,x,y,polarity
///   radar.csv         frame,distance_m,aoa_deg,radial_velocity_mps,reflectivity
///   altitude.csv      t_us,h_m
///   labels.csv        frame,x1,y1,x2,y2,present   (normalized coordinates)
///   meta.json         SceneConfig echo
void save_recording(const Recording& rec, const std::filesystem::path& dir);

Recording load_recording(const std::filesystem::path& dir);

void save_scene_config(const SceneConfig& cfg, const std::filesystem::path& path);
SceneConfig load_scene_config(const std::filesystem::path& path);

}  // namespace uavdet::sim
