#include "uavdet/prep/pipeline.hpp"

#include <algorithm>

#include "uavdet/errors.hpp"
#include "uavdet/prep/projection.hpp"

namespace uavdet::prep {

double altitude_at(const std::vector<std::pair<std::int64_t, double>>& samples, std::int64_t t_us) {
    if (samples.empty()) throw ValidationError("empty altitude log");
    if (t_us <= samples.front().first) return samples.front().second;
    if (t_us >= samples.back().first) return samples.back().second;
    const auto it = std::lower_bound(samples.begin(), samples.end(), t_us,
                                     [](const auto& s, std::int64_t t) { return s.first < t; });
    const auto prev = it - 1;
    const double f = static_cast<double>(t_us - prev->first) /
                     static_cast<double>(it->first - prev->first);
    return prev->second + f * (it->second - prev->second);
}

PreprocessedRecording preprocess_recording(const sim::Recording& rec, const radar::RadarConfig& rcfg,
                                           const ProjectionCalibration& cal,
                                           const PreprocessOptions& opt) {
    if (rec.frame_count() == 0) throw ValidationError("empty recording");
    if (cal.image_width != rec.config.width || cal.image_height != rec.config.height) {
        throw DimensionError("calibration image size does not match the recording");
    }

    PreprocessedRecording out;
    out.width = rec.config.width;
    out.height = rec.config.height;
    out.tensors.reserve(rec.frame_count());
    out.labels = rec.labels;

    const std::uint64_t noise_root =
        opt.radar_noise_seed ? opt.radar_noise_seed : derive_seed(rec.config.seed, 0x7ada);

    for (int n = 0; n < rec.frame_count(); ++n) {
        const std::int64_t t_n = rec.frame_time_us(n);

        DvsFrame dvs = accumulate_dvs(rec.events, t_n, opt.dvs_window_us, out.width, out.height);

        Rng rng(derive_seed(noise_root, static_cast<std::uint64_t>(n)));
        auto dets = radar::process_frame(rcfg, rec.radar_truths[n], opt.cfar, rng);
        out.detections[n] = dets;

        const double h = altitude_at(rec.altitude, t_n);
        auto points = project_detections(dets, h, cal);
        auto radar_channel = rasterize_columns(points, cal, opt.column_width_px);

        out.tensors.push_back(assemble_tensor(rec.rgb[n], dvs, radar_channel, n));
    }
    return out;
}

}  // namespace uavdet::prep
