#include "train/metrics.hpp"

#include <map>

#include <nlohmann/json.hpp>

#include "core/errors.hpp"

namespace tlnid::train {

using nlohmann::json;

MetricRow metrics_from_counts(const ConfusionCounts& c) {
    MetricRow m;
    const int64_t pos = c.tp + c.fn, neg = c.fp + c.tn, total = c.total();
    m.dr_pct = pos > 0 ? 100.0 * double(c.tp) / double(pos) : 0.0;
    m.acc_pct = total > 0 ? 100.0 * double(c.tp + c.tn) / double(total) : 0.0;
    m.fpr_pct = neg > 0 ? 100.0 * double(c.fp) / double(neg) : 0.0;
    return m;
}

ConfusionCounts confusion_from_scores(const std::vector<float>& scores,
                                      const std::vector<uint8_t>& labels, float threshold) {
    ConfusionCounts c;
    for (size_t i = 0; i < scores.size(); ++i) {
        const bool predicted_attack = scores[i] >= threshold;
        if (labels[i] == 1) {
            predicted_attack ? ++c.tp : ++c.fn;
        } else {
            predicted_attack ? ++c.fp : ++c.tn;
        }
    }
    return c;
}

EvalReport evaluate(model::ComposedModel& m, const prep::EncodedDataset& split, float threshold,
                    const std::set<std::string>& training_attack_types,
                    const std::string& dataset_name) {
    if (split.size() == 0) throw DataError("evaluate: empty split '" + dataset_name + "'");

    std::vector<float> scores;
    scores.reserve(split.size());
    for (size_t i = 0; i < split.size(); ++i) {
        scores.push_back(m.predict(prep::reshape(split.row(i), split.width)));
    }

    EvalReport report;
    report.dataset = dataset_name;
    report.counts = confusion_from_scores(scores, split.labels, threshold);
    report.metrics = metrics_from_counts(report.counts);

    std::map<std::string, LabelBreakdown> per_label;
    for (size_t i = 0; i < split.size(); ++i) {
        if (split.labels[i] != 1) continue;
        const std::string& name = split.label_names[size_t(split.original_label_ids[i])];
        LabelBreakdown& row = per_label[name];
        row.label = name;
        row.novel = training_attack_types.count(name) == 0;
        ++row.total;
        if (scores[i] >= threshold) ++row.detected;
    }
    for (auto& [name, row] : per_label) {
        if (row.novel) {
            report.novel_attacks += row.total;
            report.novel_detected += row.detected;
        } else {
            report.known_attacks += row.total;
            report.known_detected += row.detected;
        }
        report.per_label.push_back(row);
    }
    return report;
}

json EvalReport::to_json() const {
    json labels = json::array();
    for (const LabelBreakdown& row : per_label) {
        labels.push_back({{"label", row.label},
                          {"novel", row.novel},
                          {"total", row.total},
                          {"detected", row.detected}});
    }
    return json{{"dataset", dataset},
                {"counts", {{"tp", counts.tp}, {"fn", counts.fn}, {"fp", counts.fp},
                            {"tn", counts.tn}}},
                {"dr_pct", metrics.dr_pct},
                {"acc_pct", metrics.acc_pct},
                {"fpr_pct", metrics.fpr_pct},
                {"known_attacks", {{"total", known_attacks}, {"detected", known_detected}}},
                {"novel_attacks", {{"total", novel_attacks}, {"detected", novel_detected}}},
                {"per_label", labels}};
}

} // namespace tlnid::train
