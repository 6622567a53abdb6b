#include "uavdet/sim/events.hpp"

#include <algorithm>
#include <cmath>

#include "uavdet/errors.hpp"

namespace uavdet::sim {

std::vector<DvsEvent> emit_events(const IntensityVideo& video, double threshold) {
    if (!(threshold > 0)) throw ConfigError("DVS threshold must be positive");
    const int w = video.width, h = video.height;
    const std::size_t n = video.frames.size();
    if (video.t_us.size() != n) throw ValidationError("frame/timestamp count mismatch");
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (video.t_us[i + 1] <= video.t_us[i]) {
            throw ValidationError("frame timestamps must be strictly increasing");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (video.frames[i].size() != static_cast<std::size_t>(w) * h) {
            throw ValidationError("frame " + std::to_string(i) + " has wrong pixel count");
        }
    }

    std::vector<DvsEvent> events;
    if (n < 2) return events;

    const std::size_t npx = static_cast<std::size_t>(w) * h;
    std::vector<double> log_prev(npx), log_cur(npx);
    for (std::size_t p = 0; p < npx; ++p) {
        const double v = video.frames[0][p];
        if (!(v > 0)) throw ValidationError("non-positive intensity in frame 0");
        log_prev[p] = std::log(v);
    }

    for (std::size_t fi = 1; fi < n; ++fi) {
        const double t_a = static_cast<double>(video.t_us[fi - 1]);
        const double t_b = static_cast<double>(video.t_us[fi]);
        for (std::size_t p = 0; p < npx; ++p) {
            const double v = video.frames[fi][p];
            if (!(v > 0)) throw ValidationError("non-positive intensity in frame " + std::to_string(fi));
            log_cur[p] = std::log(v);
        }
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const std::size_t p = static_cast<std::size_t>(y) * w + x;
                const double la = log_prev[p], lb = log_cur[p];
                if (la == lb) continue;
                auto emit = [&](long k, std::int8_t pol) {
                    const double level = k * threshold;
                    const double f = (level - la) / (lb - la);
                    DvsEvent e;
                    e.x = x;
                    e.y = y;
                    e.t_us = static_cast<std::int64_t>(std::llround(t_a + f * (t_b - t_a)));
                    e.polarity = pol;
                    events.push_back(e);
                };
                if (lb > la) {
                    const long k_lo = static_cast<long>(std::floor(la / threshold)) + 1;  // rung > la
                    const long k_hi = static_cast<long>(std::floor(lb / threshold));      // rung <= lb
                    for (long k = k_lo; k <= k_hi; ++k) emit(k, +1);
                } else {
                    const long k_hi = static_cast<long>(std::ceil(la / threshold)) - 1;  // rung < la
                    const long k_lo = static_cast<long>(std::ceil(lb / threshold));      // rung >= lb
                    for (long k = k_hi; k >= k_lo; --k) emit(k, -1);
                }
            }
        }
        std::swap(log_prev, log_cur);
    }

    std::stable_sort(events.begin(), events.end(), [](const DvsEvent& a, const DvsEvent& b) {
        if (a.t_us != b.t_us) return a.t_us < b.t_us;
        if (a.y != b.y) return a.y < b.y;
        if (a.x != b.x) return a.x < b.x;
        return a.polarity < b.polarity;
    });
    return events;
}

}  // namespace uavdet::sim
