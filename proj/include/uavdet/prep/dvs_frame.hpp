#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "uavdet/sim/events.hpp"

namespace uavdet::prep {

/// Two-channel mean-timestamp frame: for each pixel and polarity, the mean
/// event-time offset within the window, normalized to [0,1] by the window
/// length. Pixels without events hold 0.
struct DvsFrame {
    int width = 0;
    int height = 0;
    std::int64_t t0_us = 0;
    std::int64_t window_us = 0;
    std::vector<double> positive;  // height*width
    std::vector<double> negative;
};

/// Accumulates events from the half-open window [t0, t0 + window) so that
/// consecutive frames partition the stream. Events must be sorted by time.
DvsFrame accumulate_dvs(std::span<const sim::DvsEvent> events, std::int64_t t0_us,
                        std::int64_t window_us, int width, int height);

}  // namespace uavdet::prep
