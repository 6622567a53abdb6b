#pragma once

namespace uavdet::prep {

/// Per-frame ground truth: normalized corner coordinates and a one-hot
/// presence pair (p1 = person present, p2 = absent).
struct FrameLabel {
    double x1 = 0, y1 = 0, x2 = 0, y2 = 0;  // normalized, x1 <= x2, y1 <= y2 when present
    int present = 0;                        // 1 when a person is in frame

    double p1() const { return present ? 1.0 : 0.0; }
    double p2() const { return present ? 0.0 : 1.0; }
};

}  // namespace uavdet::prep
