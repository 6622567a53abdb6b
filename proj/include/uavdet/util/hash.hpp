#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace uavdet {

/// FNV-1a 64-bit running hash (non-cryptographic, used for file integrity
/// checks in dataset manifests and for parameter checksums in tests).
struct Fnv1a {
    std::uint64_t state = 0xcbf29ce484222325ULL;

    void update(const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            state ^= p[i];
            state *= 0x100000001b3ULL;
        }
    }
    std::uint64_t digest() const { return state; }
};

std::string hex64(std::uint64_t v);

/// Hash a whole file; throws ValidationError when unreadable.
std::uint64_t hash_file(const std::filesystem::path& path);

}  // namespace uavdet
