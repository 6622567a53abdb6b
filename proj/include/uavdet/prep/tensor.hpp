#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <vector>

#include "uavdet/prep/dvs_frame.hpp"
#include "uavdet/prep/label.hpp"
#include "uavdet/util/image.hpp"

namespace uavdet::prep {

/// Network input: 6 channel planes in the order R, G, B, DVS+, DVS-, radar.
/// Stored planar (channel, row, column); all values in [0,1].
struct InputTensor {
    int width = 0;
    int height = 0;
    int channels = 0;
    int frame_index = 0;
    std::vector<float> data;  // channels*height*width

    float& at(int c, int y, int x) {
        return data[(static_cast<std::size_t>(c) * height + y) * width + x];
    }
    float at(int c, int y, int x) const {
        return data[(static_cast<std::size_t>(c) * height + y) * width + x];
    }
    std::size_t plane_size() const { return static_cast<std::size_t>(height) * width; }
};

inline constexpr int kChannels = 6;

/// Concatenates the modalities into the 6-channel tensor. The RGB image is
/// rescaled to [0,1]; DVS and radar planes are copied unchanged. Throws
/// DimensionError on any shape mismatch and ValidationError when an input
/// value leaves [0,1].
InputTensor assemble_tensor(const ImageU8& rgb, const DvsFrame& dvs,
                            const std::vector<double>& radar_channel, int frame_index);

/// Channel views of the tensor, inverse of assemble_tensor.
std::vector<float> extract_channel(const InputTensor& t, int channel);

/// Persistent tensor file: header (magic, width, height, channels, count)
/// followed by float32 frames; a sibling index CSV maps frame -> byte offset.
class TensorWriter {
public:
    TensorWriter(const std::filesystem::path& path, int width, int height, int channels);
    void append(const InputTensor& t);
    /// Finalizes the header and writes "<path>.index.csv".
    void close();
    ~TensorWriter();

private:
    std::filesystem::path path_;
    std::ofstream out_;
    int width_, height_, channels_;
    std::int64_t count_ = 0;
    std::vector<std::int64_t> offsets_;
    bool closed_ = false;
};

class TensorStore {
public:
    explicit TensorStore(const std::filesystem::path& path);

    int count() const { return count_; }
    int width() const { return width_; }
    int height() const { return height_; }
    int channels() const { return channels_; }
    InputTensor load(int frame) const;

private:
    std::filesystem::path path_;
    int width_ = 0, height_ = 0, channels_ = 0, count_ = 0;
    std::int64_t data_start_ = 0;
};

}  // namespace uavdet::prep
