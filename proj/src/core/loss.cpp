#include "core/loss.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace tlnid::nn {

BceResult bce_loss(float prediction, int label) {
    if (label != 0 && label != 1) throw ConfigError("bce_loss: label must be 0 or 1");
    BceResult r;
    float p = prediction;
    if (p < kBceEpsilon) {
        p = kBceEpsilon;
        r.clamped = true;
    } else if (p > 1.0f - kBceEpsilon) {
        p = 1.0f - kBceEpsilon;
        r.clamped = true;
    }
    const double pd = double(p);
    r.loss = label == 1 ? -std::log(pd) : -std::log(1.0 - pd);
    r.grad = float((pd - double(label)) / (pd * (1.0 - pd)));
    return r;
}

} // namespace tlnid::nn
