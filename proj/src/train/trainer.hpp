#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "core/optimizer.hpp"
#include "model/checkpoint.hpp"
#include "preprocess/preprocess.hpp"

namespace tlnid::train {

struct TrainConfig {
    float learning_rate = 0.001f;
    int batch_size = 50;
    int epochs = 1;
    nn::Algo optimizer = nn::Algo::adam;
    uint64_t seed = 0;
};

struct EpochRecord {
    int epoch = 0;         // 1-based
    double train_loss = 0; // mean per-sample BCE over the training pass
    double train_acc = 0;  // inference-mode accuracy on the training set at epoch end
    double val_acc = -1;   // inference-mode accuracy on the validation set; -1 when absent
    double seconds = 0;    // wall clock; reported on stdout only, never in artifacts
};

struct TrainingHistory {
    std::vector<EpochRecord> epochs;
};

// Inputs reshaped for the network: every sample shares one (length, channels)
// extent. Raw encoded splits come in as (width, 1).
struct SampleSet {
    int length = 0;
    int channels = 1;
    std::vector<float> features; // n * (length * channels), channel-major per sample
    std::vector<uint8_t> labels;

    size_t size() const { return labels.size(); }
    nn::Tensor1D tensor(size_t i) const;

    static SampleSet from_encoded(const prep::EncodedDataset& data);
};

// Mini-batch training: per-epoch reshuffle from `rng`, gradients averaged per
// batch, the final short batch trained rather than dropped, one optimizer
// step per batch. Aborts with NumericError (epoch/batch/loss trajectory) when
// the loss leaves the reals. Deterministic given (net state, data, cfg, rng).
TrainingHistory train(nn::Network& net, const SampleSet& data, const TrainConfig& cfg, Rng& rng,
                      const SampleSet* validation = nullptr);

// Same loop over a two-part model: the sample pass runs base then top and
// backpropagates through both; frozen parameters are skipped by the
// optimizer but still receive input gradients.
TrainingHistory train_composed(model::ComposedModel& m, const SampleSet& data,
                               const TrainConfig& cfg, Rng& rng,
                               const SampleSet* validation = nullptr);

double accuracy(nn::Network& net, const SampleSet& data, float threshold = 0.5f);

// ---- the two learning stages ---------------------------------------------

struct CvReport {
    std::vector<double> fold_val_acc;
    double mean = 0;
    double stddev = 0;
    nlohmann::json to_json() const;
};

struct Stage1Result {
    model::Checkpoint checkpoint; // trained on the full base training split
    CvReport cv;                  // k-fold generalization estimate (empty when folds == 0)
    TrainingHistory final_history;
};

// Cross-validates ConvNet-B + temporary head over `folds` folds (fold f uses
// derive_seed(cfg.seed, f + 1)), then retrains on the whole split with
// cfg.seed for the shipped checkpoint. folds == 0 skips the CV estimate.
Stage1Result stage1_train(const model::ModelSpec& spec, const prep::EncodedDataset& base_train,
                          const TrainConfig& cfg, int folds);

struct Stage2Result {
    model::Checkpoint checkpoint;
    TrainingHistory history;
};

// Assembles ConvNet-TL from the base checkpoint (frozen base, fresh
// ConvNet-T + head from cfg.seed) and trains the trainable part on the
// target data. With reuse_frozen_features the frozen base runs once per
// sample and training proceeds on the cached feature maps; results are
// bit-identical to streaming the full stack.
Stage2Result stage2_train(const model::Checkpoint& base_checkpoint,
                          const model::ModelSpec& tl_spec,
                          const prep::EncodedDataset& target_train, const TrainConfig& cfg,
                          const prep::EncodedDataset* validation = nullptr,
                          bool reuse_frozen_features = true);

// CSV with header epoch,train_acc,val_acc.
void curve_export(const TrainingHistory& history, const std::string& path);

} // namespace tlnid::train
