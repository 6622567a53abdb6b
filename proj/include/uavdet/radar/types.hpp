#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <map>
#include <vector>

namespace uavdet::radar {

/// Ground-truth reflector used to drive the chirp-frame synthesizer.
struct TargetTruth {
    double distance = 0;         // m, radial distance from the radar
    double aoa_deg = 0;          // degrees from boresight, |aoa| <= 90
    double radial_velocity = 0;  // m/s, > 0 receding, < 0 approaching
    double reflectivity = 1.0;   // unitless echo amplitude
};

/// Complex beat-signal frame, laid out (sample, chirp, antenna).
struct SignalCube {
    int n_samples = 0;
    int n_chirps = 0;
    int n_rx = 0;
    std::vector<std::complex<double>> data;  // n_samples*n_chirps*n_rx

    std::complex<double>& at(int s, int q, int m) {
        return data[(static_cast<std::size_t>(s) * n_chirps + q) * n_rx + m];
    }
    std::complex<double> at(int s, int q, int m) const {
        return data[(static_cast<std::size_t>(s) * n_chirps + q) * n_rx + m];
    }
};

/// Range-Doppler-azimuth magnitude cube. Indices: (range bin, Doppler bin,
/// azimuth beam); bin-to-physical-unit mapping lives in RadarConfig.
struct RdaCube {
    int n_range = 0;
    int n_doppler = 0;
    int n_beams = 0;
    std::vector<double> values;  // n_range*n_doppler*n_beams, all >= 0

    double& at(int k, int b, int a) {
        return values[(static_cast<std::size_t>(k) * n_doppler + b) * n_beams + a];
    }
    double at(int k, int b, int a) const {
        return values[(static_cast<std::size_t>(k) * n_doppler + b) * n_beams + a];
    }
};

/// One CFAR hit converted to physical units.
struct RadarDetection {
    double range_m = 0;
    double azimuth_deg = 0;   // from boresight
    double doppler_mps = 0;   // > 0 receding
    double magnitude = 0;
};

/// Detection list CSV: header "frame,range_m,azimuth_deg,doppler_mps,magnitude".
void save_detections_csv(const std::filesystem::path& path,
                         const std::map<int, std::vector<RadarDetection>>& by_frame);
std::map<int, std::vector<RadarDetection>> load_detections_csv(const std::filesystem::path& path);

}  // namespace uavdet::radar
