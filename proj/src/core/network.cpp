#include "core/network.hpp"

#include <cstring>
#include <string>

namespace tlnid::nn {

Tensor1D Network::forward(const Tensor1D& in, Mode mode, Rng* rng) {
    Tensor1D x = in;
    for (auto& layer : layers_) x = layer->forward(x, mode, rng);
    return x;
}

Tensor1D Network::backward(const Tensor1D& upstream) {
    Tensor1D g = upstream;
    for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) g = (*it)->backward(g);
    return g;
}

std::vector<ParamView> Network::params() {
    std::vector<ParamView> out;
    for (auto& layer : layers_) {
        for (ParamView& p : layer->params()) out.push_back(p);
    }
    return out;
}

std::vector<ParamView> Network::trainable_params() {
    std::vector<ParamView> out;
    for (ParamView& p : params()) {
        if (p.trainable) out.push_back(p);
    }
    return out;
}

void Network::zero_grads() {
    for (auto& layer : layers_) layer->zero_grads();
}

void Network::set_trainable(bool trainable) {
    for (auto& layer : layers_) layer->trainable = trainable;
}

DecisionTrace Network::decisions() const {
    DecisionTrace t;
    for (const auto& layer : layers_) layer->append_decisions(t);
    return t;
}

size_t Network::param_count() const {
    size_t n = 0;
    for (const auto& layer : layers_) {
        for (const ParamView& p : const_cast<Layer&>(*layer).params()) n += p.values.size();
    }
    return n;
}

void Network::copy_params_to(std::vector<float>& out) const {
    for (const auto& layer : layers_) {
        for (const ParamView& p : const_cast<Layer&>(*layer).params()) {
            out.insert(out.end(), p.values.begin(), p.values.end());
        }
    }
}

void Network::load_params_from(const float* data, size_t n) {
    size_t off = 0;
    for (auto& layer : layers_) {
        for (ParamView& p : layer->params()) {
            if (off + p.values.size() > n) {
                throw IoError("Network: parameter image too short (" + std::to_string(n) +
                              " floats)");
            }
            std::memcpy(p.values.data(), data + off, p.values.size() * sizeof(float));
            off += p.values.size();
        }
    }
    if (off != n) {
        throw IoError("Network: parameter image has " + std::to_string(n) + " floats, expected " +
                      std::to_string(off));
    }
}

} // namespace tlnid::nn
