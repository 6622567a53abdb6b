#pragma once

#include <cstdint>
#include <vector>

namespace uavdet::sim {

/// One asynchronous brightness-change event.
struct DvsEvent {
    std::int32_t x = 0;
    std::int32_t y = 0;
    std::int64_t t_us = 0;
    std::int8_t polarity = 0;  // +1 or -1
};

/// Grayscale intensity video: frames of strictly positive values.
struct IntensityVideo {
    int width = 0;
    int height = 0;
    std::vector<std::int64_t> t_us;        // frame timestamps, strictly increasing
    std::vector<std::vector<double>> frames;  // each height*width, row-major
};

/// Emits polarity events wherever per-pixel log intensity crosses a level of
/// the absolute threshold ladder {k*C, k integer}, with crossing times
/// linearly interpolated between frames.
///
/// Level-crossing conventions: a rising segment (La -> Lb) fires the rungs
/// in (La, Lb], a falling one the rungs in [Lb, La). Anchoring the ladder at
/// zero rather than at each pixel's first sample makes event statistics
/// symmetric under time reversal. Events are returned sorted by
/// (t_us, y, x, polarity).
///
/// Throws ConfigError for threshold <= 0 and ValidationError for
/// non-positive intensities or non-increasing timestamps.
std::vector<DvsEvent> emit_events(const IntensityVideo& video, double threshold);

}  // namespace uavdet::sim
