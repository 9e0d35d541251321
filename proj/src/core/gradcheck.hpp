#pragma once

#include <cstdint>

#include "core/network.hpp"

namespace tlnid::nn {

struct GradCheckConfig {
    int sample_params = 50; // <= 0 checks every parameter
    float step = 1e-3f;
    uint64_t seed = 0; // fixes dropout masks and the parameter sample
};

struct GradCheckReport {
    double max_rel_error = 0.0;
    int checked = 0;
    int excluded = 0; // perturbation flipped a relu sign, pool argmax, or the loss clamp
};

// Central-difference verification of dL/dtheta through `net` with a binary
// cross-entropy loss on a single-unit output. Every forward replays the same
// dropout masks; parameters whose +/-step evaluations disagree on any
// discrete decision are excluded from the error and counted separately.
GradCheckReport gradient_check(Network& net, const Tensor1D& input, int label,
                               const GradCheckConfig& cfg);

} // namespace tlnid::nn
