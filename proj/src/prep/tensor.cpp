#include "uavdet/prep/tensor.hpp"

#include <cstring>

#include "uavdet/errors.hpp"
#include "uavdet/util/csv.hpp"

namespace uavdet::prep {

namespace {
constexpr char kMagic[8] = {'U', 'V', 'T', 'E', 'N', 'S', 'R', '1'};

void copy_plane(InputTensor& t, int channel, const std::vector<double>& src, const char* name) {
    if (src.size() != t.plane_size()) {
        throw DimensionError(std::string(name) + " plane size mismatch");
    }
    for (std::size_t i = 0; i < src.size(); ++i) {
        const double v = src[i];
        if (v < 0.0 || v > 1.0) {
            throw ValidationError(std::string(name) + " value outside [0,1]");
        }
        t.data[static_cast<std::size_t>(channel) * t.plane_size() + i] = static_cast<float>(v);
    }
}
}  // namespace

InputTensor assemble_tensor(const ImageU8& rgb, const DvsFrame& dvs,
                            const std::vector<double>& radar_channel, int frame_index) {
    if (rgb.width != dvs.width || rgb.height != dvs.height) {
        throw DimensionError("RGB and DVS shapes differ");
    }
    InputTensor t;
    t.width = rgb.width;
    t.height = rgb.height;
    t.channels = kChannels;
    t.frame_index = frame_index;
    t.data.resize(static_cast<std::size_t>(kChannels) * t.plane_size());

    for (int y = 0; y < t.height; ++y) {
        for (int x = 0; x < t.width; ++x) {
            for (int c = 0; c < 3; ++c) {
                t.at(c, y, x) = static_cast<float>(rgb.at(x, y, c) / 255.0);
            }
        }
    }
    copy_plane(t, 3, dvs.positive, "DVS positive");
    copy_plane(t, 4, dvs.negative, "DVS negative");
    copy_plane(t, 5, radar_channel, "radar");
    return t;
}

std::vector<float> extract_channel(const InputTensor& t, int channel) {
    if (channel < 0 || channel >= t.channels) throw DimensionError("channel index out of range");
    const auto begin = t.data.begin() + static_cast<std::ptrdiff_t>(channel) * t.plane_size();
    return {begin, begin + static_cast<std::ptrdiff_t>(t.plane_size())};
}

TensorWriter::TensorWriter(const std::filesystem::path& path, int width, int height, int channels)
    : path_(path), out_(path, std::ios::binary), width_(width), height_(height), channels_(channels) {
    if (!out_) throw ValidationError("cannot write " + path.string());
    std::int32_t hdr[4] = {width, height, channels, 0};
    out_.write(kMagic, sizeof(kMagic));
    out_.write(reinterpret_cast<const char*>(hdr), sizeof(hdr));
}

void TensorWriter::append(const InputTensor& t) {
    if (t.width != width_ || t.height != height_ || t.channels != channels_) {
        throw DimensionError("tensor shape does not match the store");
    }
    offsets_.push_back(static_cast<std::int64_t>(out_.tellp()));
    out_.write(reinterpret_cast<const char*>(t.data.data()),
               static_cast<std::streamsize>(t.data.size() * sizeof(float)));
    ++count_;
}

void TensorWriter::close() {
    if (closed_) return;
    closed_ = true;
    out_.seekp(sizeof(kMagic) + 3 * sizeof(std::int32_t));
    const std::int32_t n = static_cast<std::int32_t>(count_);
    out_.write(reinterpret_cast<const char*>(&n), sizeof(n));
    out_.close();

    CsvWriter idx(path_.string() + ".index.csv", {"frame", "offset_bytes"});
    for (std::size_t i = 0; i < offsets_.size(); ++i) {
        idx.row({std::to_string(i), std::to_string(offsets_[i])});
    }
}

TensorWriter::~TensorWriter() {
    try {
        close();
    } catch (...) {
    }
}

TensorStore::TensorStore(const std::filesystem::path& path) : path_(path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path.string());
    char magic[8];
    std::int32_t hdr[4];
    in.read(magic, sizeof(magic));
    in.read(reinterpret_cast<char*>(hdr), sizeof(hdr));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw ValidationError(path.string() + " is not a tensor store");
    }
    width_ = hdr[0];
    height_ = hdr[1];
    channels_ = hdr[2];
    count_ = hdr[3];
    data_start_ = sizeof(kMagic) + sizeof(hdr);
}

InputTensor TensorStore::load(int frame) const {
    if (frame < 0 || frame >= count_) throw DimensionError("tensor frame index out of range");
    InputTensor t;
    t.width = width_;
    t.height = height_;
    t.channels = channels_;
    t.frame_index = frame;
    const std::size_t n = static_cast<std::size_t>(channels_) * height_ * width_;
    t.data.resize(n);
    std::ifstream in(path_, std::ios::binary);
    in.seekg(data_start_ + static_cast<std::int64_t>(frame) * static_cast<std::int64_t>(n * sizeof(float)));
    in.read(reinterpret_cast<char*>(t.data.data()), static_cast<std::streamsize>(n * sizeof(float)));
    if (!in) throw ValidationError("truncated tensor store " + path_.string());
    return t;
}

}  // namespace uavdet::prep
