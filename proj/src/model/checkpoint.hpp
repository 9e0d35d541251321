#pragma once

#include <string>
#include <vector>

#include "model/tl_model.hpp"

namespace tlnid::model {

// On-disk model image. Layout (little-endian):
//   "TLNID" | u16 version | u32 spec length | spec JSON (canonical) |
//   u64 float count | raw f32 parameters in declaration order |
//   u64 fnv1a64 digest over everything before it
struct Checkpoint {
    ModelSpec spec;
    std::vector<float> params; // base layers first, then top layers

    static Checkpoint from_model(const ComposedModel& m);
    // Rebuilds the model and restores parameters bit-exactly.
    ComposedModel to_model() const;

    void save(const std::string& path) const;
    static Checkpoint load(const std::string& path);
};

} // namespace tlnid::model
