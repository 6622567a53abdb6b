#include "uavdet/prep/dvs_frame.hpp"

#include <algorithm>

#include "uavdet/errors.hpp"

namespace uavdet::prep {

DvsFrame accumulate_dvs(std::span<const sim::DvsEvent> events, std::int64_t t0_us,
                        std::int64_t window_us, int width, int height) {
    if (window_us <= 0) throw ConfigError("DVS window length must be positive");
    DvsFrame frame;
    frame.width = width;
    frame.height = height;
    frame.t0_us = t0_us;
    frame.window_us = window_us;
    const std::size_t npx = static_cast<std::size_t>(width) * height;
    frame.positive.assign(npx, 0.0);
    frame.negative.assign(npx, 0.0);

    const auto begin = std::lower_bound(events.begin(), events.end(), t0_us,
                                        [](const sim::DvsEvent& e, std::int64_t t) { return e.t_us < t; });
    const auto end = std::lower_bound(begin, events.end(), t0_us + window_us,
                                      [](const sim::DvsEvent& e, std::int64_t t) { return e.t_us < t; });

    std::vector<std::int64_t> sum_pos(npx, 0), sum_neg(npx, 0);
    std::vector<std::int32_t> cnt_pos(npx, 0), cnt_neg(npx, 0);
    for (auto it = begin; it != end; ++it) {
        if (it->x < 0 || it->x >= width || it->y < 0 || it->y >= height) {
            throw ValidationError("event outside the sensor area");
        }
        const std::size_t p = static_cast<std::size_t>(it->y) * width + it->x;
        if (it->polarity > 0) {
            sum_pos[p] += it->t_us - t0_us;
            cnt_pos[p] += 1;
        } else {
            sum_neg[p] += it->t_us - t0_us;
            cnt_neg[p] += 1;
        }
    }
    for (std::size_t p = 0; p < npx; ++p) {
        if (cnt_pos[p] > 0) {
            frame.positive[p] = static_cast<double>(sum_pos[p]) / cnt_pos[p] / static_cast<double>(window_us);
        }
        if (cnt_neg[p] > 0) {
            frame.negative[p] = static_cast<double>(sum_neg[p]) / cnt_neg[p] / static_cast<double>(window_us);
        }
    }
    return frame;
}

}  // namespace uavdet::prep
