#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "core/tensor.hpp"
#include "preprocess/schema.hpp"

namespace tlnid::prep {

// Per-slot gap-repair rules fitted on training data: numeric gaps take the
// training median, categorical gaps take the reserved "unknown" token.
struct PatchPolicy {
    std::vector<double> numeric_fill; // one entry per schema slot (unused for categorical)
    std::vector<uint8_t> has_fill;    // slot had at least one observed training value
};

struct ScalerStats {
    std::vector<double> mean;
    std::vector<double> stddev;       // population formula
    std::vector<uint8_t> constant;    // stddev < 1e-12: dimension maps to 0
};

// Everything needed to transform a record exactly like the training data was
// transformed, persisted between stages and runs.
struct PreprocessorState {
    int version = 1;
    UnifiedSchema schema; // vocabularies resolved
    PatchPolicy patch;
    ScalerStats scaler;
    data::TableSchema table; // column layout the state was fitted against
    data::Source source = data::Source::nslkdd;
    std::string fitted_on;

    nlohmann::json to_json() const;
    static PreprocessorState from_json(const nlohmann::json& j);
    void save(const std::string& path) const;
    static PreprocessorState load(const std::string& path);
};

// ---- the four pipeline steps -------------------------------------------

// Medians (sort-based) of every mapped numeric slot over the training split;
// throws DataError when a mapped numeric field has no usable value at all.
PatchPolicy fit_patch(const data::DatasetSplit& training, const UnifiedSchema& schema);

// Repairs gaps in place; afterwards no mapped field is empty or unparseable.
void patch(std::vector<data::RawRecord>& records, const data::TableSchema& table,
           data::Source source, const UnifiedSchema& schema, const PatchPolicy& policy);

// Fills vocabularies for categorical slots that do not pin one: sorted
// observed values plus the reserved "unknown" entry (always last).
void fit_encoder(UnifiedSchema& schema, const std::vector<data::RawRecord>& patched,
                 const data::TableSchema& table, data::Source source);

// Patched record -> pre-scaling vector of schema.total_width() values.
// Unmapped slots read 0 / "unknown"; out-of-vocabulary values hit "unknown".
std::vector<float> encode(const data::RawRecord& record, const data::TableSchema& table,
                          data::Source source, const UnifiedSchema& schema);

// Population mean/stddev per dimension over >= 2 encoded vectors.
ScalerStats fit_scaler(const std::vector<float>& matrix, int width);

// (x - mean) / stddev in place; constant dimensions map to 0.
void scale(std::span<float> vec, const ScalerStats& stats);

// Width-checked adapter into the network input layout.
nn::Tensor1D reshape(std::span<const float> vec, int expected_width);

// ---- fitted pipeline ----------------------------------------------------

PreprocessorState fit_preprocessor(const data::DatasetSplit& training,
                                   const UnifiedSchema& schema);

std::vector<float> transform_record(const PreprocessorState& state,
                                    const data::RawRecord& record);

// Transformed split: row-major feature matrix plus labels and the original
// label vocabulary (for the known/novel breakdown at evaluation time).
struct EncodedDataset {
    int width = 0;
    data::Role role = data::Role::base;
    std::vector<float> features; // size() == rows * width
    std::vector<uint8_t> labels;
    std::vector<int32_t> original_label_ids;
    std::vector<std::string> label_names;

    size_t size() const { return labels.size(); }
    std::span<const float> row(size_t i) const {
        return {features.data() + i * size_t(width), size_t(width)};
    }

    void save(const std::string& path) const;
    static EncodedDataset load(const std::string& path);
};

EncodedDataset transform_split(const PreprocessorState& state, const data::DatasetSplit& split);

} // namespace tlnid::prep
