#pragma once

#include <cstdint>
#include <vector>

#include "core/layers.hpp"

namespace tlnid::nn {

enum class Algo { sgd, adam };

struct OptimizerConfig {
    Algo algo = Algo::adam;
    float learning_rate = 0.001f;
    float beta1 = 0.9f;
    float beta2 = 0.999f;
    float epsilon = 1e-8f;
};

// Updates a fixed set of parameter views. Moment buffers are positional, so
// callers must pass the views in the same order on every step (a training run
// resolves its trainable set once, up front).
class Optimizer {
public:
    explicit Optimizer(OptimizerConfig cfg) : cfg_(cfg) {}

    void step(const std::vector<ParamView>& params);

    int64_t step_count() const { return t_; }
    const OptimizerConfig& config() const { return cfg_; }

private:
    OptimizerConfig cfg_;
    int64_t t_ = 0;
    std::vector<std::vector<float>> m_, v_; // Adam moments, lazily sized
};

} // namespace tlnid::nn
