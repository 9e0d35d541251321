#include "model/tl_model.hpp"

#include <memory>

#include "core/errors.hpp"
#include "model/checkpoint.hpp"

namespace tlnid::model {

using namespace tlnid::nn;

namespace {

// conv -> relu -> pool -> dropout per ConvNet layer; validates the running
// extent so the spec's shape algebra and the built stack cannot drift apart.
Extent append_block(Network& net, const BlockSpec& block, Extent in, const std::string& name,
                    Rng& init_rng) {
    for (size_t i = 0; i < block.layers.size(); ++i) {
        const ConvLayerSpec& l = block.layers[i];
        const std::string where = name + " layer " + std::to_string(i);
        if (in.length < l.kernel) {
            throw ShapeError(where + ": extent " + std::to_string(in.length) +
                             " shorter than kernel " + std::to_string(l.kernel));
        }
        net.add(std::make_unique<Conv1D>(in.channels, l.filters, l.kernel, l.stride, init_rng));
        in.length = (in.length - l.kernel) / l.stride + 1;
        in.channels = l.filters;
        net.add(std::make_unique<Activation>(Act::relu));
        if (in.length < l.pool_width) {
            throw ShapeError(where + ": extent " + std::to_string(in.length) +
                             " shorter than pool width " + std::to_string(l.pool_width));
        }
        net.add(std::make_unique<MaxPool1D>(l.pool_width, l.pool_stride));
        in.length = (in.length - l.pool_width) / l.pool_stride + 1;
        net.add(std::make_unique<Dropout>(l.dropout_retain));
    }
    return in;
}

void append_head(Network& net, const HeadSpec& head, int in_features, Rng& init_rng) {
    int features = in_features;
    if (head.hidden_units > 0) {
        net.add(std::make_unique<Dense>(features, head.hidden_units, init_rng));
        net.add(std::make_unique<Activation>(Act::relu));
        features = head.hidden_units;
    }
    net.add(std::make_unique<Dense>(features, 1, init_rng));
    net.add(std::make_unique<Activation>(Act::sigmoid));
}

} // namespace

Tensor1D ComposedModel::features(const Tensor1D& in, Mode mode, Rng* rng) {
    // A frozen base never runs stochastic dropout, but still caches what a
    // backward pass through it would need.
    return base.forward(in, mode, base_frozen ? nullptr : rng);
}

float ComposedModel::predict(const Tensor1D& in) {
    const Tensor1D f = base.forward(in, Mode::infer, nullptr);
    const Tensor1D out = top.forward(f, Mode::infer, nullptr);
    return out.data.at(0);
}

std::vector<ParamView> ComposedModel::trainable_params() {
    std::vector<ParamView> out;
    for (ParamView& p : base.trainable_params()) out.push_back(p);
    for (ParamView& p : top.trainable_params()) out.push_back(p);
    return out;
}

size_t ComposedModel::param_count() const { return base.param_count() + top.param_count(); }

ComposedModel build_model(const ModelSpec& spec, uint64_t seed) {
    spec.validate();
    ComposedModel m;
    m.spec = spec;
    Rng init_rng(seed);
    Extent e = append_block(m.base, spec.base, {spec.input_width, 1}, "base", init_rng);
    if (spec.target) e = append_block(m.top, *spec.target, e, "target", init_rng);
    append_head(m.top, spec.head, e.flat(), init_rng);
    return m;
}

ComposedModel assemble_tl(const Checkpoint& base_checkpoint, const ModelSpec& tl_spec,
                          uint64_t seed) {
    if (!tl_spec.target) {
        throw ConfigError("assemble_tl: spec has no target block to attach");
    }
    if (base_checkpoint.spec.to_json().at("base") != tl_spec.to_json().at("base") ||
        base_checkpoint.spec.input_width != tl_spec.input_width) {
        throw ConfigError("assemble_tl: checkpoint base block does not match the requested spec");
    }

    // Rebuild the stage-1 model to peel its base parameters off; the
    // temporary head is dropped here.
    ComposedModel stage1 = base_checkpoint.to_model();

    ComposedModel m = build_model(tl_spec, seed);
    std::vector<float> base_params;
    stage1.base.copy_params_to(base_params);
    m.base.load_params_from(base_params.data(), base_params.size());
    freeze(m, "base");
    return m;
}

void freeze(ComposedModel& m, const std::string& selector) {
    if (selector == "base") {
        m.base.set_trainable(false);
        m.base_frozen = true;
    } else if (selector == "top") {
        m.top.set_trainable(false);
    } else if (selector == "all") {
        m.base.set_trainable(false);
        m.top.set_trainable(false);
        m.base_frozen = true;
    } else if (selector == "none") {
        m.base.set_trainable(true);
        m.top.set_trainable(true);
        m.base_frozen = false;
    } else {
        throw ConfigError("freeze: unknown selector '" + selector +
                          "' (expected base, top, all, or none)");
    }
}

} // namespace tlnid::model
