#pragma once

namespace tlnid::nn {

// Clamp bound for binary cross-entropy; removes the log singularities.
inline constexpr float kBceEpsilon = 1e-7f;

struct BceResult {
    double loss = 0.0;   // -[y ln p + (1-y) ln(1-p)] on the clamped p
    float grad = 0.0f;   // dL/dp on the clamped p: (p - y) / (p (1 - p))
    bool clamped = false;
};

BceResult bce_loss(float prediction, int label);

} // namespace tlnid::nn
