#pragma once

#include <set>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "train/metrics.hpp"
#include "train/trainer.hpp"

namespace tlnid::train {

struct SweepRow {
    std::string condition; // "no-transfer" or "transfer@<epochs>"
    int stage1_epochs = 0; // 0 for the no-transfer baseline
    EvalReport test_plus;
    EvalReport test_21;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    nlohmann::json to_json() const;
    std::string to_text() const;
};

struct SweepInputs {
    const prep::EncodedDataset* base_train = nullptr;
    const prep::EncodedDataset* target_train = nullptr;
    const prep::EncodedDataset* test_plus = nullptr;
    const prep::EncodedDataset* test_21 = nullptr;
    std::set<std::string> training_attack_types;
};

// One row per condition: the no-transfer baseline (the target block + head
// trained from scratch on the target data) and one frozen-base transfer run
// per stage-1 epoch budget in `epoch_grid`. Condition i runs with seed ^ i
// (baseline is condition 0), so rerunning any single condition standalone
// with that seed reproduces its row.
SweepResult transferability_sweep(const model::ModelSpec& tl_spec, const SweepInputs& in,
                                  const std::vector<int>& epoch_grid,
                                  const TrainConfig& stage1_cfg, const TrainConfig& stage2_cfg,
                                  float threshold, uint64_t seed);

// The baseline condition as a standalone run (also used by the sweep itself).
SweepRow no_transfer_baseline(const model::ModelSpec& tl_spec, const SweepInputs& in,
                              const TrainConfig& stage2_cfg, float threshold, uint64_t seed);

} // namespace tlnid::train
