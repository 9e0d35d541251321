#include "model/model_spec.hpp"

#include <nlohmann/json.hpp>

#include "core/errors.hpp"

namespace tlnid::model {

using nlohmann::json;

namespace {

json block_to_json(const BlockSpec& b) {
    json layers = json::array();
    for (const ConvLayerSpec& l : b.layers) {
        layers.push_back({{"filters", l.filters},
                          {"kernel", l.kernel},
                          {"stride", l.stride},
                          {"pool_width", l.pool_width},
                          {"pool_stride", l.pool_stride},
                          {"dropout_retain", l.dropout_retain}});
    }
    return json{{"layers", layers}};
}

BlockSpec block_from_json(const json& j) {
    BlockSpec b;
    for (const auto& jl : j.at("layers")) {
        ConvLayerSpec l;
        l.filters = jl.at("filters").get<int>();
        l.kernel = jl.value("kernel", 3);
        l.stride = jl.value("stride", 1);
        l.pool_width = jl.value("pool_width", 2);
        l.pool_stride = jl.value("pool_stride", 2);
        l.dropout_retain = jl.value("dropout_retain", 0.5f);
        b.layers.push_back(l);
    }
    return b;
}

} // namespace

json ModelSpec::to_json() const {
    json j{{"input_width", input_width},
           {"base", block_to_json(base)},
           {"head", {{"hidden_units", head.hidden_units},
                     {"output_activation", head.output_activation}}}};
    if (target) j["target"] = block_to_json(*target);
    return j;
}

ModelSpec ModelSpec::from_json(const json& j) {
    ModelSpec s;
    s.input_width = j.at("input_width").get<int>();
    s.base = block_from_json(j.at("base"));
    if (j.contains("target")) s.target = block_from_json(j.at("target"));
    s.head.hidden_units = j.at("head").value("hidden_units", 0);
    s.head.output_activation = j.at("head").value("output_activation", "sigmoid");
    s.validate();
    return s;
}

std::string ModelSpec::canonical_text() const { return to_json().dump(); }

void ModelSpec::validate() const {
    if (input_width < 1) throw ShapeError("model spec: input width must be positive");
    if (base.layers.empty()) throw ShapeError("model spec: base block needs >= 1 ConvNet layer");
    if (target && target->layers.empty()) {
        throw ShapeError("model spec: target block needs >= 1 ConvNet layer");
    }
    auto check_block = [](const BlockSpec& b, const char* which) {
        for (size_t i = 0; i < b.layers.size(); ++i) {
            const ConvLayerSpec& l = b.layers[i];
            if (l.filters < 1 || l.kernel < 1 || l.stride < 1 || l.pool_width < 1 ||
                l.pool_stride < 1) {
                throw ShapeError(std::string("model spec: ") + which + " layer " +
                                 std::to_string(i) + " has a non-positive dimension");
            }
            if (!(l.dropout_retain > 0.0f) || l.dropout_retain > 1.0f) {
                throw ConfigError(std::string("model spec: ") + which + " layer " +
                                  std::to_string(i) + " dropout retain must be in (0, 1]");
            }
        }
    };
    check_block(base, "base");
    if (target) check_block(*target, "target");
    if (head.hidden_units < 0) throw ShapeError("model spec: negative hidden units");
    if (head.output_activation != "sigmoid") {
        throw ConfigError("model spec: unsupported output activation '" +
                          head.output_activation + "'");
    }
}

ModelSpec ModelSpec::paper_profile(int input_width) {
    ModelSpec s;
    s.input_width = input_width;
    s.base.layers = {{256, 3, 1, 2, 2, 0.5f}, {512, 3, 1, 2, 2, 0.5f}};
    s.target = BlockSpec{{{8, 3, 1, 2, 2, 0.5f}, {16, 3, 1, 2, 2, 0.5f}}};
    return s;
}

ModelSpec ModelSpec::desk_profile(int input_width) {
    ModelSpec s;
    s.input_width = input_width;
    s.base.layers = {{32, 3, 1, 2, 2, 0.5f}, {64, 3, 1, 2, 2, 0.5f}};
    s.target = BlockSpec{{{8, 3, 1, 2, 2, 0.5f}, {16, 3, 1, 2, 2, 0.5f}}};
    return s;
}

ModelSpec ModelSpec::profile(const std::string& name, int input_width) {
    if (name == "paper") return paper_profile(input_width);
    if (name == "desk") return desk_profile(input_width);
    throw ConfigError("unknown model profile '" + name + "' (expected paper or desk)");
}

Extent block_output(const BlockSpec& block, Extent in, const std::string& block_name) {
    for (size_t i = 0; i < block.layers.size(); ++i) {
        const ConvLayerSpec& l = block.layers[i];
        const std::string where = block_name + " layer " + std::to_string(i);
        if (in.length < l.kernel) {
            throw ShapeError(where + ": extent " + std::to_string(in.length) +
                             " shorter than kernel " + std::to_string(l.kernel));
        }
        in.length = (in.length - l.kernel) / l.stride + 1;
        if (in.length < l.pool_width) {
            throw ShapeError(where + ": extent " + std::to_string(in.length) +
                             " shorter than pool width " + std::to_string(l.pool_width));
        }
        in.length = (in.length - l.pool_width) / l.pool_stride + 1;
        in.channels = l.filters;
    }
    return in;
}

Extent model_feature_extent(const ModelSpec& spec) {
    Extent e = block_output(spec.base, {spec.input_width, 1}, "base");
    if (spec.target) e = block_output(*spec.target, e, "target");
    return e;
}

} // namespace tlnid::model
