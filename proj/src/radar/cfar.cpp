#include <algorithm>
#include <cmath>

#include "uavdet/errors.hpp"
#include "uavdet/radar/chain.hpp"
#include "uavdet/util/csv.hpp"

namespace uavdet::radar {

namespace {

// Inclusive box sum over a summed-area table with (n+1) x (m+1) layout.
inline double box_sum(const std::vector<double>& sat, int stride, int k0, int k1, int b0, int b1) {
    return sat[static_cast<std::size_t>(k1 + 1) * stride + (b1 + 1)] -
           sat[static_cast<std::size_t>(k0) * stride + (b1 + 1)] -
           sat[static_cast<std::size_t>(k1 + 1) * stride + b0] +
           sat[static_cast<std::size_t>(k0) * stride + b0];
}

}  // namespace

std::vector<RadarDetection> cfar_detect(const RadarConfig& cfg, const RdaCube& cube,
                                        const CfarParams& params) {
    if (params.guard < 1 || params.train < 1) throw ConfigError("CFAR guard and train must be >= 1");
    if (!(params.scale > 1.0)) throw ConfigError("CFAR scale must exceed 1");
    const int nk = cube.n_range, ndop = cube.n_doppler, nb = cube.n_beams;
    const int w = params.guard + params.train;
    if (2 * w + 1 > nk || 2 * w + 1 > ndop) {
        throw ConfigError("CFAR training window exceeds cube extent");
    }

    const int k_unambiguous = nk / 2;  // bins past Nyquist carry no targets
    std::vector<RadarDetection> dets;
    std::vector<double> sat(static_cast<std::size_t>(nk + 1) * (ndop + 1));

    for (int a = 0; a < nb; ++a) {
        double angle;
        const bool beam_valid = beam_angle_deg(cfg, a, &angle);

        // Summed-area table of this azimuth slice.
        const int stride = ndop + 1;
        for (int b = 0; b <= ndop; ++b) sat[b] = 0.0;
        for (int k = 0; k < nk; ++k) {
            double rowsum = 0.0;
            for (int b = 0; b < ndop; ++b) {
                rowsum += cube.at(k, b, a);
                sat[static_cast<std::size_t>(k + 1) * stride + (b + 1)] =
                    sat[static_cast<std::size_t>(k) * stride + (b + 1)] + rowsum;
            }
            sat[static_cast<std::size_t>(k + 1) * stride] = 0.0;
        }

        for (int k = 0; k < nk; ++k) {
            for (int b = 0; b < ndop; ++b) {
                const double mag = cube.at(k, b, a);
                // Training ring, clipped at the plane borders.
                const int fk0 = std::max(0, k - w), fk1 = std::min(nk - 1, k + w);
                const int fb0 = std::max(0, b - w), fb1 = std::min(ndop - 1, b + w);
                const int gk0 = std::max(0, k - params.guard), gk1 = std::min(nk - 1, k + params.guard);
                const int gb0 = std::max(0, b - params.guard), gb1 = std::min(ndop - 1, b + params.guard);
                const double train_sum = box_sum(sat, stride, fk0, fk1, fb0, fb1) -
                                         box_sum(sat, stride, gk0, gk1, gb0, gb1);
                const int train_cnt = (fk1 - fk0 + 1) * (fb1 - fb0 + 1) -
                                      (gk1 - gk0 + 1) * (gb1 - gb0 + 1);
                if (!(mag > params.scale * train_sum / train_cnt)) continue;

                if (params.local_max_only) {
                    bool is_max = true;
                    for (int dk = -1; dk <= 1 && is_max; ++dk) {
                        for (int db = -1; db <= 1; ++db) {
                            if (dk == 0 && db == 0) continue;
                            const int kk = k + dk, bb = b + db;
                            if (kk < 0 || kk >= nk || bb < 0 || bb >= ndop) continue;
                            if (cube.at(kk, bb, a) > mag) {
                                is_max = false;
                                break;
                            }
                        }
                    }
                    if (!is_max) continue;
                }
                if (k > k_unambiguous || !beam_valid) continue;

                RadarDetection d;
                d.range_m = range_of_bin(cfg, k);
                d.doppler_mps = velocity_of_bin(cfg, b);
                d.azimuth_deg = angle;
                d.magnitude = mag;
                dets.push_back(d);
            }
        }
    }
    return dets;
}

void save_detections_csv(const std::filesystem::path& path,
                         const std::map<int, std::vector<RadarDetection>>& by_frame) {
    CsvWriter w(path, {"frame", "range_m", "azimuth_deg", "doppler_mps", "magnitude"});
    for (const auto& [frame, dets] : by_frame) {
        for (const auto& d : dets) {
            w.row({std::to_string(frame), fmt_double(d.range_m), fmt_double(d.azimuth_deg),
                   fmt_double(d.doppler_mps), fmt_double(d.magnitude)});
        }
    }
}

std::map<int, std::vector<RadarDetection>> load_detections_csv(const std::filesystem::path& path) {
    CsvTable t = read_csv(path);
    const int c_frame = t.column("frame");
    const int c_range = t.column("range_m");
    const int c_az = t.column("azimuth_deg");
    const int c_dop = t.column("doppler_mps");
    const int c_mag = t.column("magnitude");
    std::map<int, std::vector<RadarDetection>> out;
    for (const auto& row : t.rows) {
        RadarDetection d;
        d.range_m = std::stod(row[c_range]);
        d.azimuth_deg = std::stod(row[c_az]);
        d.doppler_mps = std::stod(row[c_dop]);
        d.magnitude = std::stod(row[c_mag]);
        out[std::stoi(row[c_frame])].push_back(d);
    }
    return out;
}

}  // namespace uavdet::radar
