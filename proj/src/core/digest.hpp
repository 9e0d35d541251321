#pragma once

#include <cstddef>
#include <cstdint>

namespace tlnid {

// FNV-1a 64-bit content hash; guards checkpoints and vector files against
// truncation and bit flips.
inline uint64_t fnv1a64(const void* data, size_t n, uint64_t seed = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    uint64_t h = seed;
    for (size_t i = 0; i < n; ++i) {
        h ^= uint64_t(p[i]);
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace tlnid
