#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace tlnid::model {

// One ConvNet layer: convolution -> relu -> max pooling -> dropout.
struct ConvLayerSpec {
    int filters = 8;
    int kernel = 3;
    int stride = 1;
    int pool_width = 2;
    int pool_stride = 2;
    float dropout_retain = 0.5f;
};

struct BlockSpec {
    std::vector<ConvLayerSpec> layers;
};

struct HeadSpec {
    int hidden_units = 0; // 0: single output unit straight off the flattened features
    std::string output_activation = "sigmoid";
};

struct Extent {
    int length = 0;
    int channels = 0;
    int flat() const { return length * channels; }
};

// Architecture description for the whole stack. `target` present means the
// spec describes the assembled transfer model (base + target + head);
// absent means a base-only model with its temporary training head.
struct ModelSpec {
    int input_width = 113;
    BlockSpec base;
    std::optional<BlockSpec> target;
    HeadSpec head;

    nlohmann::json to_json() const;
    static ModelSpec from_json(const nlohmann::json& j);
    // Canonical serialized form; equal specs produce equal strings.
    std::string canonical_text() const;

    void validate() const;

    // Stock profiles: `paper` is the full-scale configuration (base 256/512,
    // target 8/16), `desk` a fixture-speed one (base 32/64, target 8/16).
    static ModelSpec paper_profile(int input_width = 113);
    static ModelSpec desk_profile(int input_width = 113);
    static ModelSpec profile(const std::string& name, int input_width = 113);
};

// Valid-padding shape algebra; throws ShapeError naming the layer index when
// the spatial extent collapses below a kernel or pool width.
Extent block_output(const BlockSpec& block, Extent in, const std::string& block_name);
Extent model_feature_extent(const ModelSpec& spec);

} // namespace tlnid::model
