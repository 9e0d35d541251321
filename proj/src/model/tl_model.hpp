#pragma once

#include <string>

#include "core/network.hpp"
#include "model/model_spec.hpp"

namespace tlnid::model {

struct Checkpoint;

// The trained artifact: a ConvNet-B feature stack plus what sits on top of
// it. For a base-only spec the top is the temporary fully-connected training
// head; for an assembled spec it is the ConvNet-T block followed by the head.
struct ComposedModel {
    ModelSpec spec;
    nn::Network base;
    nn::Network top;
    bool base_frozen = false;

    // Base output feeding the top network.
    nn::Tensor1D features(const nn::Tensor1D& in, nn::Mode mode, Rng* rng);
    // Full stack, inference mode: attack probability in (0, 1).
    float predict(const nn::Tensor1D& in);

    std::vector<nn::ParamView> trainable_params();
    size_t param_count() const;
};

// Builds the model a spec describes with freshly initialized parameters drawn
// from `seed` (base first, then top, in declaration order).
ComposedModel build_model(const ModelSpec& spec, uint64_t seed);

// Stage-2 assembly: take ConvNet-B out of a base checkpoint, discard its
// temporary head, attach a freshly initialized ConvNet-T block and head from
// `seed`, and freeze the base.
ComposedModel assemble_tl(const Checkpoint& base_checkpoint, const ModelSpec& tl_spec,
                          uint64_t seed);

// selector: "base", "top", "none" (clears all freezing), or "all".
void freeze(ComposedModel& m, const std::string& selector);

} // namespace tlnid::model
