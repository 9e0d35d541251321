#include "train/sweep.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

#include "core/errors.hpp"

namespace tlnid::train {

using nlohmann::json;

namespace {

void require_inputs(const SweepInputs& in) {
    if (in.base_train == nullptr || in.target_train == nullptr || in.test_plus == nullptr ||
        in.test_21 == nullptr) {
        throw ConfigError("sweep: base, target and both test splits are required");
    }
}

// "ConvNet" condition: the target-shaped stack learns the target data with no
// transferred knowledge.
model::ModelSpec baseline_spec(const model::ModelSpec& tl_spec) {
    model::ModelSpec s;
    s.input_width = tl_spec.input_width;
    s.base = tl_spec.target.value();
    s.head = tl_spec.head;
    return s;
}

} // namespace

SweepRow no_transfer_baseline(const model::ModelSpec& tl_spec, const SweepInputs& in,
                              const TrainConfig& stage2_cfg, float threshold, uint64_t seed) {
    require_inputs(in);
    if (!tl_spec.target) throw ConfigError("sweep: spec has no target block");

    TrainConfig cfg = stage2_cfg;
    cfg.seed = seed;
    model::ComposedModel m = build_model(baseline_spec(tl_spec), seed);
    const SampleSet data = SampleSet::from_encoded(*in.target_train);
    Rng rng(derive_seed(seed, 1));
    train_composed(m, data, cfg, rng, nullptr);

    SweepRow row;
    row.condition = "no-transfer";
    row.stage1_epochs = 0;
    row.test_plus = evaluate(m, *in.test_plus, threshold, in.training_attack_types, "test-plus");
    row.test_21 = evaluate(m, *in.test_21, threshold, in.training_attack_types, "test-21");
    return row;
}

SweepResult transferability_sweep(const model::ModelSpec& tl_spec, const SweepInputs& in,
                                  const std::vector<int>& epoch_grid,
                                  const TrainConfig& stage1_cfg, const TrainConfig& stage2_cfg,
                                  float threshold, uint64_t seed) {
    require_inputs(in);
    if (epoch_grid.empty()) throw ConfigError("sweep: epoch grid must not be empty");

    SweepResult result;
    result.rows.push_back(no_transfer_baseline(tl_spec, in, stage2_cfg, threshold, seed ^ 0));

    for (size_t g = 0; g < epoch_grid.size(); ++g) {
        const uint64_t cond_seed = seed ^ (g + 1);
        TrainConfig s1 = stage1_cfg;
        s1.epochs = epoch_grid[g];
        s1.seed = cond_seed;
        const Stage1Result stage1 = stage1_train(tl_spec, *in.base_train, s1, /*folds=*/0);

        TrainConfig s2 = stage2_cfg;
        s2.seed = cond_seed;
        const Stage2Result stage2 =
            stage2_train(stage1.checkpoint, tl_spec, *in.target_train, s2, nullptr, true);

        model::ComposedModel m = stage2.checkpoint.to_model();
        SweepRow row;
        row.condition = "transfer@" + std::to_string(epoch_grid[g]);
        row.stage1_epochs = epoch_grid[g];
        row.test_plus =
            evaluate(m, *in.test_plus, threshold, in.training_attack_types, "test-plus");
        row.test_21 = evaluate(m, *in.test_21, threshold, in.training_attack_types, "test-21");
        result.rows.push_back(std::move(row));
    }
    return result;
}

json SweepResult::to_json() const {
    json rows_j = json::array();
    for (const SweepRow& r : rows) {
        rows_j.push_back({{"condition", r.condition},
                          {"stage1_epochs", r.stage1_epochs},
                          {"test_plus", r.test_plus.to_json()},
                          {"test_21", r.test_21.to_json()}});
    }
    return json{{"rows", rows_j}};
}

std::string SweepResult::to_text() const {
    std::string out;
    char line[160];
    std::snprintf(line, sizeof line, "%-14s | %8s %8s %8s | %8s %8s %8s\n", "condition", "DR%",
                  "ACC%", "FPR%", "DR%", "ACC%", "FPR%");
    out += "                 ------------ test-plus ----------   ------------ test-21 -----------\n";
    out += line;
    for (const SweepRow& r : rows) {
        std::snprintf(line, sizeof line, "%-14s | %8.2f %8.2f %8.2f | %8.2f %8.2f %8.2f\n",
                      r.condition.c_str(), r.test_plus.metrics.dr_pct,
                      r.test_plus.metrics.acc_pct, r.test_plus.metrics.fpr_pct,
                      r.test_21.metrics.dr_pct, r.test_21.metrics.acc_pct,
                      r.test_21.metrics.fpr_pct);
        out += line;
    }
    return out;
}

} // namespace tlnid::train
