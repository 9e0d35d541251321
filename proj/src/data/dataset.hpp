#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace tlnid::data {

enum class Source { nslkdd, unswnb15 };
enum class Role { base, target, test_plus, test_21 };

std::string role_name(Role r);
std::string source_name(Source s);
Source source_from_name(const std::string& name);

enum class ColumnKind { numeric, categorical, label, drop };

struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::numeric;
};

// Ordered column layout of one CSV distribution. NSL-KDD ships built in;
// UNSW-NB15 layouts come from JSON descriptor files because the public
// distributions disagree on column order.
struct TableSchema {
    std::string name;
    std::vector<Column> columns;

    static TableSchema nslkdd();
    static TableSchema load(const std::string& path);
    static TableSchema from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    int index_of(const std::string& field) const; // -1 when absent
};

struct RawRecord {
    std::vector<std::string> values; // one per schema column
    std::string original_label;     // attack name or "normal"
    int binary_label = 0;           // 0 normal, 1 attack
};

struct DatasetSplit {
    Role role = Role::base;
    Source source = Source::nslkdd;
    TableSchema schema;
    std::vector<RawRecord> records;
    std::string provenance;

    size_t size() const { return records.size(); }
};

enum class NslVariant { train_plus, test_plus, test_21 };

// 43-column NSL-KDD rows; the difficulty column is kept as metadata and never
// used as a feature.
DatasetSplit load_nslkdd(const std::string& path, NslVariant variant);

// One or more CSV files in the layout `schema` describes; a header row is
// auto-detected by matching the schema's first column name.
DatasetSplit load_unswnb15(const std::vector<std::string>& paths, const TableSchema& schema);

// "normal" (case-insensitive, trimmed) -> 0, anything else -> 1; empty -> DataError.
int binarize_label(const std::string& original_label);
std::string normalize_label(const std::string& original_label);

struct DatasetStats {
    int64_t normal_count = 0;
    int64_t attack_count = 0;
    double attack_pct = 0.0;
    std::optional<double> novel_attack_pct;
};

DatasetStats compute_stats(const DatasetSplit& split,
                           const std::set<std::string>* training_attack_types = nullptr);

// Normalized attack-label vocabulary of a split (excludes "normal").
std::set<std::string> attack_types(const DatasetSplit& split);

// Shuffled contiguous folds; sizes differ by at most one, assignment depends
// only on (n, k, seed).
std::vector<std::pair<std::vector<size_t>, std::vector<size_t>>> kfold_indices(size_t n, int k,
                                                                               uint64_t seed);
std::vector<std::pair<DatasetSplit, DatasetSplit>> kfold_split(const DatasetSplit& split, int k,
                                                               uint64_t seed);

// Deterministic stratified subsample with n_per_class records of each class.
DatasetSplit make_fixture(const DatasetSplit& split, size_t n_per_class, uint64_t seed);

// Stratified train/test partition by class, train_fraction in (0, 1).
std::pair<DatasetSplit, DatasetSplit> stratified_partition(const DatasetSplit& split,
                                                           double train_fraction, uint64_t seed);

} // namespace tlnid::data
