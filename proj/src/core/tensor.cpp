#include "core/tensor.hpp"

#include <cmath>
#include <string>

namespace tlnid::nn {

Tensor1D::Tensor1D(int length_, int channels_) : length(length_), channels(channels_) {
    if (length_ <= 0 || channels_ <= 0) {
        throw ShapeError("Tensor1D: non-positive shape (" + std::to_string(length_) + ", " +
                         std::to_string(channels_) + ")");
    }
    data.assign(size_t(length_) * size_t(channels_), 0.0f);
}

Tensor1D Tensor1D::from_values(std::vector<float> values) {
    if (values.empty()) throw ShapeError("Tensor1D: empty value list");
    Tensor1D t;
    t.length = int(values.size());
    t.channels = 1;
    t.data = std::move(values);
    return t;
}

bool Tensor1D::all_finite() const {
    for (float v : data) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

void require_shape(const Tensor1D& t, int length, int channels, const char* who) {
    if (t.length != length || t.channels != channels) {
        throw ShapeError(std::string(who) + ": expected shape (" + std::to_string(length) + ", " +
                         std::to_string(channels) + "), got (" + std::to_string(t.length) + ", " +
                         std::to_string(t.channels) + ")");
    }
}

} // namespace tlnid::nn
