#include "core/layers.hpp"

#include <cmath>
#include <string>

namespace tlnid::nn {

namespace {

// Glorot-style uniform init; biases start at zero.
void glorot_fill(std::vector<float>& w, int fan_in, int fan_out, Rng& rng) {
    const float limit = std::sqrt(6.0f / float(fan_in + fan_out));
    for (float& v : w) v = rng.uniform(-limit, limit);
}

int strided_windows(int in_length, int window, int stride) {
    return (in_length - window) / stride + 1;
}

} // namespace

// ---------------------------------------------------------------- Conv1D

Conv1D::Conv1D(int in_channels, int filters, int kernel, int stride, Rng& init_rng)
    : in_channels_(in_channels), filters_(filters), kernel_(kernel), stride_(stride) {
    if (in_channels < 1 || filters < 1 || kernel < 1 || stride < 1) {
        throw ShapeError("Conv1D: in_channels/filters/kernel/stride must be >= 1");
    }
    weights.assign(size_t(filters) * size_t(in_channels) * size_t(kernel), 0.0f);
    bias.assign(size_t(filters), 0.0f);
    glorot_fill(weights, in_channels * kernel, filters * kernel, init_rng);
    grad_w.assign(weights.size(), 0.0f);
    grad_b.assign(bias.size(), 0.0f);
}

int Conv1D::out_length(int in_length) const {
    if (in_length < kernel_) {
        throw ShapeError("Conv1D: input length " + std::to_string(in_length) +
                         " shorter than kernel " + std::to_string(kernel_));
    }
    return strided_windows(in_length, kernel_, stride_);
}

std::string Conv1D::name() const {
    return "conv1d(" + std::to_string(filters_) + "f,k" + std::to_string(kernel_) + ",s" +
           std::to_string(stride_) + ")";
}

Tensor1D Conv1D::forward(const Tensor1D& in, Mode mode, Rng*) {
    if (in.channels != in_channels_) {
        throw ShapeError(name() + ": expected " + std::to_string(in_channels_) +
                         " input channels, got " + std::to_string(in.channels));
    }
    const int out_len = out_length(in.length);
    Tensor1D out(out_len, filters_);
    for (int f = 0; f < filters_; ++f) {
        for (int i = 0; i < out_len; ++i) {
            double acc = bias[size_t(f)];
            const int base = i * stride_;
            for (int c = 0; c < in_channels_; ++c) {
                const float* wrow = &weights[(size_t(f) * in_channels_ + c) * kernel_];
                const float* xrow = &in.data[size_t(c) * in.length + base];
                for (int k = 0; k < kernel_; ++k) acc += double(wrow[k]) * double(xrow[k]);
            }
            out.at(i, f) = float(acc);
        }
    }
    cached_input_ = (mode == Mode::train) ? std::optional<Tensor1D>(in) : std::nullopt;
    return out;
}

Tensor1D Conv1D::backward(const Tensor1D& upstream) {
    if (!cached_input_) throw StateError(name() + ": backward before training-mode forward");
    const Tensor1D& in = *cached_input_;
    const int out_len = strided_windows(in.length, kernel_, stride_);
    require_shape(upstream, out_len, filters_, "Conv1D::backward upstream");

    Tensor1D input_grad(in.length, in.channels);
    for (int f = 0; f < filters_; ++f) {
        for (int i = 0; i < out_len; ++i) {
            const float g = upstream.at(i, f);
            if (g == 0.0f) continue;
            const int base = i * stride_;
            grad_b[size_t(f)] += g;
            for (int c = 0; c < in_channels_; ++c) {
                float* gw = &grad_w[(size_t(f) * in_channels_ + c) * kernel_];
                const float* wrow = &weights[(size_t(f) * in_channels_ + c) * kernel_];
                const float* xrow = &in.data[size_t(c) * in.length + base];
                float* grow = &input_grad.data[size_t(c) * in.length + base];
                for (int k = 0; k < kernel_; ++k) {
                    gw[k] += g * xrow[k];
                    grow[k] += g * wrow[k];
                }
            }
        }
    }
    return input_grad;
}

std::vector<ParamView> Conv1D::params() {
    return {{std::span<float>(weights), std::span<float>(grad_w), trainable},
            {std::span<float>(bias), std::span<float>(grad_b), trainable}};
}

void Conv1D::zero_grads() {
    std::fill(grad_w.begin(), grad_w.end(), 0.0f);
    std::fill(grad_b.begin(), grad_b.end(), 0.0f);
}

// ------------------------------------------------------------- MaxPool1D

MaxPool1D::MaxPool1D(int width, int stride) : width_(width), stride_(stride) {
    if (width < 1 || stride < 1) throw ShapeError("MaxPool1D: width and stride must be >= 1");
}

int MaxPool1D::out_length(int in_length) const {
    if (in_length < width_) {
        throw ShapeError("MaxPool1D: input length " + std::to_string(in_length) +
                         " shorter than pool width " + std::to_string(width_));
    }
    return strided_windows(in_length, width_, stride_);
}

std::string MaxPool1D::name() const {
    return "maxpool1d(w" + std::to_string(width_) + ",s" + std::to_string(stride_) + ")";
}

Tensor1D MaxPool1D::forward(const Tensor1D& in, Mode mode, Rng*) {
    const int out_len = out_length(in.length);
    Tensor1D out(out_len, in.channels);
    std::vector<int32_t> argmax;
    if (mode == Mode::train) argmax.resize(size_t(out_len) * size_t(in.channels));

    for (int c = 0; c < in.channels; ++c) {
        for (int i = 0; i < out_len; ++i) {
            const int base = i * stride_;
            int best = base;
            float best_v = in.at(base, c);
            // strict > keeps ties on the lowest index
            for (int k = 1; k < width_; ++k) {
                const float v = in.at(base + k, c);
                if (v > best_v) {
                    best_v = v;
                    best = base + k;
                }
            }
            out.at(i, c) = best_v;
            if (mode == Mode::train) argmax[size_t(c) * out_len + i] = int32_t(best);
        }
    }
    if (mode == Mode::train) {
        argmax_ = std::move(argmax);
        in_length_ = in.length;
        channels_ = in.channels;
    } else {
        argmax_.clear();
    }
    return out;
}

Tensor1D MaxPool1D::backward(const Tensor1D& upstream) {
    if (argmax_.empty()) throw StateError(name() + ": backward before training-mode forward");
    const int out_len = strided_windows(in_length_, width_, stride_);
    require_shape(upstream, out_len, channels_, "MaxPool1D::backward upstream");

    Tensor1D input_grad(in_length_, channels_);
    for (int c = 0; c < channels_; ++c) {
        for (int i = 0; i < out_len; ++i) {
            input_grad.at(argmax_[size_t(c) * out_len + i], c) += upstream.at(i, c);
        }
    }
    return input_grad;
}

void MaxPool1D::append_decisions(DecisionTrace& t) const {
    t.insert(t.end(), argmax_.begin(), argmax_.end());
}

// --------------------------------------------------------------- Dropout

Dropout::Dropout(float retain_p) : retain_p_(retain_p) {
    if (!(retain_p > 0.0f) || retain_p > 1.0f) {
        throw ConfigError("Dropout: retain probability must be in (0, 1], got " +
                          std::to_string(retain_p));
    }
}

std::string Dropout::name() const { return "dropout(p" + std::to_string(retain_p_) + ")"; }

Tensor1D Dropout::forward(const Tensor1D& in, Mode mode, Rng* rng) {
    if (mode == Mode::infer) {
        mask_.clear();
        return in;
    }
    Tensor1D out = in;
    mask_.assign(in.size(), 1);
    if (rng != nullptr) {
        const float inv = 1.0f / retain_p_;
        for (size_t j = 0; j < out.data.size(); ++j) {
            if (rng->bernoulli(double(retain_p_))) {
                out.data[j] *= inv;
            } else {
                out.data[j] = 0.0f;
                mask_[j] = 0;
            }
        }
    }
    // rng == nullptr: frozen-block training pass, identity with an all-ones mask
    return out;
}

Tensor1D Dropout::backward(const Tensor1D& upstream) {
    if (mask_.empty()) throw StateError(name() + ": backward before training-mode forward");
    if (upstream.size() != mask_.size()) {
        throw ShapeError(name() + ": upstream size " + std::to_string(upstream.size()) +
                         " != cached mask size " + std::to_string(mask_.size()));
    }
    Tensor1D grad = upstream;
    const float inv = 1.0f / retain_p_;
    for (size_t j = 0; j < grad.data.size(); ++j) {
        grad.data[j] = mask_[j] ? grad.data[j] * inv : 0.0f;
    }
    return grad;
}

void Dropout::append_decisions(DecisionTrace& t) const {
    t.insert(t.end(), mask_.begin(), mask_.end());
}

// ----------------------------------------------------------------- Dense

Dense::Dense(int in_features, int units, Rng& init_rng) : in_features_(in_features), units_(units) {
    if (in_features < 1 || units < 1) throw ShapeError("Dense: in_features and units must be >= 1");
    weights.assign(size_t(units) * size_t(in_features), 0.0f);
    bias.assign(size_t(units), 0.0f);
    glorot_fill(weights, in_features, units, init_rng);
    grad_w.assign(weights.size(), 0.0f);
    grad_b.assign(bias.size(), 0.0f);
}

std::string Dense::name() const {
    return "dense(" + std::to_string(in_features_) + "->" + std::to_string(units_) + ")";
}

Tensor1D Dense::forward(const Tensor1D& in, Mode mode, Rng*) {
    if (int(in.size()) != in_features_) {
        throw ShapeError(name() + ": expected " + std::to_string(in_features_) +
                         " flattened inputs, got " + std::to_string(in.size()));
    }
    Tensor1D out(units_, 1);
    for (int u = 0; u < units_; ++u) {
        double acc = bias[size_t(u)];
        const float* wrow = &weights[size_t(u) * in_features_];
        for (int j = 0; j < in_features_; ++j) acc += double(wrow[j]) * double(in.data[size_t(j)]);
        out.data[size_t(u)] = float(acc);
    }
    cached_input_ = (mode == Mode::train) ? std::optional<Tensor1D>(in) : std::nullopt;
    return out;
}

Tensor1D Dense::backward(const Tensor1D& upstream) {
    if (!cached_input_) throw StateError(name() + ": backward before training-mode forward");
    require_shape(upstream, units_, 1, "Dense::backward upstream");
    const Tensor1D& in = *cached_input_;

    Tensor1D input_grad(in.length, in.channels);
    for (int u = 0; u < units_; ++u) {
        const float g = upstream.data[size_t(u)];
        grad_b[size_t(u)] += g;
        float* gw = &grad_w[size_t(u) * in_features_];
        const float* wrow = &weights[size_t(u) * in_features_];
        for (int j = 0; j < in_features_; ++j) {
            gw[j] += g * in.data[size_t(j)];
            input_grad.data[size_t(j)] += g * wrow[j];
        }
    }
    return input_grad;
}

std::vector<ParamView> Dense::params() {
    return {{std::span<float>(weights), std::span<float>(grad_w), trainable},
            {std::span<float>(bias), std::span<float>(grad_b), trainable}};
}

void Dense::zero_grads() {
    std::fill(grad_w.begin(), grad_w.end(), 0.0f);
    std::fill(grad_b.begin(), grad_b.end(), 0.0f);
}

// ------------------------------------------------------------ Activation

float sigmoid(float x) { return 1.0f / (1.0f + std::exp(-x)); }

Activation::Activation(Act kind) : kind_(kind) {}

std::string Activation::name() const { return kind_ == Act::relu ? "relu" : "sigmoid"; }

Tensor1D Activation::forward(const Tensor1D& in, Mode mode, Rng*) {
    Tensor1D out = in;
    if (kind_ == Act::relu) {
        for (float& v : out.data) v = v > 0.0f ? v : 0.0f;
    } else {
        for (float& v : out.data) v = sigmoid(v);
    }
    if (mode == Mode::train) {
        cached_in_ = in;
        cached_out_ = out;
    } else {
        cached_in_.reset();
        cached_out_.reset();
    }
    return out;
}

Tensor1D Activation::backward(const Tensor1D& upstream) {
    if (!cached_in_) throw StateError(name() + ": backward before training-mode forward");
    if (upstream.size() != cached_in_->size()) {
        throw ShapeError(name() + ": upstream size mismatch");
    }
    Tensor1D grad = upstream;
    if (kind_ == Act::relu) {
        for (size_t j = 0; j < grad.data.size(); ++j) {
            if (cached_in_->data[j] <= 0.0f) grad.data[j] = 0.0f;
        }
    } else {
        for (size_t j = 0; j < grad.data.size(); ++j) {
            const float y = cached_out_->data[j];
            grad.data[j] *= y * (1.0f - y);
        }
    }
    return grad;
}

void Activation::append_decisions(DecisionTrace& t) const {
    if (kind_ != Act::relu || !cached_in_) return;
    for (float v : cached_in_->data) t.push_back(v > 0.0f ? 1 : 0);
}

} // namespace tlnid::nn
