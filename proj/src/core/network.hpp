#pragma once

#include <memory>
#include <vector>

#include "core/layers.hpp"

namespace tlnid::nn {

// A plain sequential stack. Single-owner while training; forward over
// distinct inputs with fixed parameters is side-effect free in infer mode.
class Network {
public:
    Network() = default;
    Network(Network&&) = default;
    Network& operator=(Network&&) = default;

    void add(std::unique_ptr<Layer> layer) { layers_.push_back(std::move(layer)); }

    Tensor1D forward(const Tensor1D& in, Mode mode, Rng* rng);
    // Runs the whole stack in reverse; returns the gradient w.r.t. the input.
    Tensor1D backward(const Tensor1D& upstream);

    std::vector<ParamView> params();
    std::vector<ParamView> trainable_params();
    void zero_grads();
    void set_trainable(bool trainable);

    DecisionTrace decisions() const;

    size_t param_count() const;
    // Flat parameter image in declaration order (weights then bias per layer).
    void copy_params_to(std::vector<float>& out) const;
    void load_params_from(const float* data, size_t n);

    std::vector<std::unique_ptr<Layer>>& layers() { return layers_; }
    const std::vector<std::unique_ptr<Layer>>& layers() const { return layers_; }
    bool empty() const { return layers_.empty(); }

private:
    std::vector<std::unique_ptr<Layer>> layers_;
};

} // namespace tlnid::nn
