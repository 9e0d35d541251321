#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "model/tl_model.hpp"
#include "preprocess/preprocess.hpp"

namespace tlnid::train {

struct ConfusionCounts {
    int64_t tp = 0, fn = 0, fp = 0, tn = 0;
    int64_t total() const { return tp + fn + fp + tn; }
};

// DR = tp/(tp+fn), ACC = (tp+tn)/total, FPR = fp/(fp+tn), all as percentages.
struct MetricRow {
    double dr_pct = 0.0;
    double acc_pct = 0.0;
    double fpr_pct = 0.0;
};

MetricRow metrics_from_counts(const ConfusionCounts& c);

struct LabelBreakdown {
    std::string label;
    bool novel = false;
    int64_t total = 0;
    int64_t detected = 0;
};

struct EvalReport {
    std::string dataset;
    ConfusionCounts counts;
    MetricRow metrics;
    std::vector<LabelBreakdown> per_label; // attacks only, ordered by label name
    int64_t known_attacks = 0, known_detected = 0;
    int64_t novel_attacks = 0, novel_detected = 0;

    nlohmann::json to_json() const;
};

// Thresholded sigmoid scoring over a preprocessed split. `training_attack_types`
// drives the known/novel breakdown (normalized names); predictions with
// probability >= threshold count as attack.
EvalReport evaluate(model::ComposedModel& m, const prep::EncodedDataset& split, float threshold,
                    const std::set<std::string>& training_attack_types,
                    const std::string& dataset_name);

// Counts from ready-made scores; shared by evaluate and the threshold tests.
ConfusionCounts confusion_from_scores(const std::vector<float>& scores,
                                      const std::vector<uint8_t>& labels, float threshold);

} // namespace tlnid::train
