#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace uavdet {

/// 8-bit RGB image, row-major, interleaved channels.
struct ImageU8 {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // height*width*3

    std::uint8_t& at(int x, int y, int c) { return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c]; }
    std::uint8_t at(int x, int y, int c) const { return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c]; }
};

void write_png(const std::filesystem::path& path, const ImageU8& img);
ImageU8 read_png(const std::filesystem::path& path);

}  // namespace uavdet
