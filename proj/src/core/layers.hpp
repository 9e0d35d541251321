#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/rng.hpp"
#include "core/tensor.hpp"

namespace tlnid::nn {

enum class Mode { infer, train };

// One parameter array paired with its gradient buffer. Views stay valid for
// the lifetime of the owning layer.
struct ParamView {
    std::span<float> values;
    std::span<float> grads;
    bool trainable = true;
};

// Snapshot of the discrete choices a forward pass made (relu signs, pool
// argmaxes, dropout mask). The gradient checker compares traces across the
// two perturbed evaluations to spot non-differentiable crossings.
using DecisionTrace = std::vector<int32_t>;

class Layer {
public:
    virtual ~Layer() = default;

    // mode == train caches whatever backward needs; rng == nullptr in train
    // mode runs stochastic layers as the identity (frozen blocks) without
    // consuming randomness.
    virtual Tensor1D forward(const Tensor1D& in, Mode mode, Rng* rng) = 0;

    // Accumulates parameter gradients (call zero_grads() per batch) and
    // returns the gradient w.r.t. the cached input. Throws StateError when no
    // training-mode forward preceded it.
    virtual Tensor1D backward(const Tensor1D& upstream) = 0;

    virtual std::vector<ParamView> params() { return {}; }
    virtual void zero_grads() {}
    virtual void append_decisions(DecisionTrace&) const {}
    virtual std::string name() const = 0;

    // Shape algebra; throws ShapeError when the input extent is unusable.
    virtual int out_length(int in_length) const = 0;
    virtual int out_channels(int in_channels) const = 0;

    bool trainable = true;
};

class Conv1D final : public Layer {
public:
    // Valid padding. Weight layout: weights[((f * in_channels) + c) * kernel + k].
    Conv1D(int in_channels, int filters, int kernel, int stride, Rng& init_rng);

    Tensor1D forward(const Tensor1D& in, Mode mode, Rng* rng) override;
    Tensor1D backward(const Tensor1D& upstream) override;
    std::vector<ParamView> params() override;
    void zero_grads() override;
    std::string name() const override;
    int out_length(int in_length) const override;
    int out_channels(int) const override { return filters_; }

    int in_channels() const { return in_channels_; }
    int filters() const { return filters_; }
    int kernel() const { return kernel_; }
    int stride() const { return stride_; }

    std::vector<float> weights, bias;
    std::vector<float> grad_w, grad_b;

private:
    int in_channels_, filters_, kernel_, stride_;
    std::optional<Tensor1D> cached_input_;
};

class MaxPool1D final : public Layer {
public:
    MaxPool1D(int width, int stride);

    Tensor1D forward(const Tensor1D& in, Mode mode, Rng* rng) override;
    Tensor1D backward(const Tensor1D& upstream) override;
    void append_decisions(DecisionTrace& t) const override;
    std::string name() const override;
    int out_length(int in_length) const override;
    int out_channels(int in_channels) const override { return in_channels; }

    const std::vector<int32_t>& cached_argmax() const { return argmax_; }

private:
    int width_, stride_;
    int in_length_ = 0, channels_ = 0;
    std::vector<int32_t> argmax_; // flat input index per output element; empty when not cached
};

class Dropout final : public Layer {
public:
    explicit Dropout(float retain_p);

    // Inverted dropout: kept elements are scaled by 1/retain_p so inference
    // is exactly the identity.
    Tensor1D forward(const Tensor1D& in, Mode mode, Rng* rng) override;
    Tensor1D backward(const Tensor1D& upstream) override;
    void append_decisions(DecisionTrace& t) const override;
    std::string name() const override;
    int out_length(int in_length) const override { return in_length; }
    int out_channels(int in_channels) const override { return in_channels; }

    float retain_p() const { return retain_p_; }
    const std::vector<uint8_t>& cached_mask() const { return mask_; }

private:
    float retain_p_;
    std::vector<uint8_t> mask_; // empty when not cached
};

class Dense final : public Layer {
public:
    // Consumes the flattened input (length * channels values, channel-major).
    Dense(int in_features, int units, Rng& init_rng);

    Tensor1D forward(const Tensor1D& in, Mode mode, Rng* rng) override;
    Tensor1D backward(const Tensor1D& upstream) override;
    std::vector<ParamView> params() override;
    void zero_grads() override;
    std::string name() const override;
    int out_length(int) const override { return units_; }
    int out_channels(int) const override { return 1; }

    int in_features() const { return in_features_; }
    int units() const { return units_; }

    std::vector<float> weights, bias; // weights[u * in_features + j]
    std::vector<float> grad_w, grad_b;

private:
    int in_features_, units_;
    std::optional<Tensor1D> cached_input_;
};

enum class Act { relu, sigmoid };

class Activation final : public Layer {
public:
    explicit Activation(Act kind);

    Tensor1D forward(const Tensor1D& in, Mode mode, Rng* rng) override;
    Tensor1D backward(const Tensor1D& upstream) override;
    void append_decisions(DecisionTrace& t) const override;
    std::string name() const override;
    int out_length(int in_length) const override { return in_length; }
    int out_channels(int in_channels) const override { return in_channels; }

    Act kind() const { return kind_; }

private:
    Act kind_;
    std::optional<Tensor1D> cached_in_;
    std::optional<Tensor1D> cached_out_;
};

float sigmoid(float x);

} // namespace tlnid::nn
