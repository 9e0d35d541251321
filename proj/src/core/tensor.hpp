#pragma once

#include <cstddef>
#include <vector>

#include "core/errors.hpp"

namespace tlnid::nn {

// Channel-major 1D feature map: data[c * length + i]. Flattening (for dense
// layers and checkpoints) walks the same order.
struct Tensor1D {
    std::vector<float> data;
    int length = 0;
    int channels = 0;

    Tensor1D() = default;
    Tensor1D(int length_, int channels_);

    // Column vector view of raw values: (values.size(), 1).
    static Tensor1D from_values(std::vector<float> values);

    float& at(int i, int c) { return data[size_t(c) * size_t(length) + size_t(i)]; }
    float at(int i, int c) const { return data[size_t(c) * size_t(length) + size_t(i)]; }

    size_t size() const { return data.size(); }
    bool all_finite() const;
};

// Throws ShapeError naming `who` with expected vs actual dims.
void require_shape(const Tensor1D& t, int length, int channels, const char* who);

} // namespace tlnid::nn
