#include "data/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "core/errors.hpp"
#include "core/rng.hpp"
#include "data/csv.hpp"

namespace tlnid::data {

using nlohmann::json;

std::string role_name(Role r) {
    switch (r) {
        case Role::base: return "base";
        case Role::target: return "target";
        case Role::test_plus: return "test-plus";
        case Role::test_21: return "test-21";
    }
    return "?";
}

std::string source_name(Source s) { return s == Source::nslkdd ? "nslkdd" : "unsw-nb15"; }

Source source_from_name(const std::string& name) {
    if (name == "nslkdd") return Source::nslkdd;
    if (name == "unsw-nb15") return Source::unswnb15;
    throw DataError("unknown dataset source '" + name + "'");
}

namespace {

ColumnKind kind_from_name(const std::string& k) {
    if (k == "numeric") return ColumnKind::numeric;
    if (k == "categorical") return ColumnKind::categorical;
    if (k == "label") return ColumnKind::label;
    if (k == "drop") return ColumnKind::drop;
    throw DataError("schema descriptor: unknown column kind '" + k + "'");
}

std::string kind_name(ColumnKind k) {
    switch (k) {
        case ColumnKind::numeric: return "numeric";
        case ColumnKind::categorical: return "categorical";
        case ColumnKind::label: return "label";
        case ColumnKind::drop: return "drop";
    }
    return "?";
}

} // namespace

TableSchema TableSchema::nslkdd() {
    // Canonical 41-feature layout plus label and difficulty.
    static const char* kNumeric[] = {
        "duration", "src_bytes", "dst_bytes", "land", "wrong_fragment", "urgent", "hot",
        "num_failed_logins", "logged_in", "num_compromised", "root_shell", "su_attempted",
        "num_root", "num_file_creations", "num_shells", "num_access_files", "num_outbound_cmds",
        "is_host_login", "is_guest_login", "count", "srv_count", "serror_rate", "srv_serror_rate",
        "rerror_rate", "srv_rerror_rate", "same_srv_rate", "diff_srv_rate", "srv_diff_host_rate",
        "dst_host_count", "dst_host_srv_count", "dst_host_same_srv_rate",
        "dst_host_diff_srv_rate", "dst_host_same_src_port_rate", "dst_host_srv_diff_host_rate",
        "dst_host_serror_rate", "dst_host_srv_serror_rate", "dst_host_rerror_rate",
        "dst_host_srv_rerror_rate"};
    TableSchema s;
    s.name = "nslkdd";
    auto num = [](const char* n) { return Column{n, ColumnKind::numeric}; };
    auto cat = [](const char* n) { return Column{n, ColumnKind::categorical}; };
    s.columns = {num(kNumeric[0]), cat("protocol_type"), cat("service"), cat("flag")};
    for (size_t i = 1; i < std::size(kNumeric); ++i) s.columns.push_back(num(kNumeric[i]));
    s.columns.push_back({"label", ColumnKind::label});
    s.columns.push_back({"difficulty", ColumnKind::drop});
    return s;
}

TableSchema TableSchema::from_json(const json& j) {
    TableSchema s;
    s.name = j.value("name", "unnamed");
    if (!j.contains("columns") || !j["columns"].is_array() || j["columns"].empty()) {
        throw DataError("schema descriptor: missing 'columns' array");
    }
    for (const auto& c : j["columns"]) {
        s.columns.push_back({c.at("name").get<std::string>(),
                             kind_from_name(c.at("kind").get<std::string>())});
    }
    return s;
}

TableSchema TableSchema::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open schema descriptor " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError("schema descriptor " + path + ": " + e.what());
    }
    return from_json(j);
}

json TableSchema::to_json() const {
    json cols = json::array();
    for (const Column& c : columns) cols.push_back({{"name", c.name}, {"kind", kind_name(c.kind)}});
    return json{{"name", name}, {"columns", cols}};
}

int TableSchema::index_of(const std::string& field) const {
    for (size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].name == field) return int(i);
    }
    return -1;
}

std::string normalize_label(const std::string& original_label) {
    return to_lower(trim(original_label));
}

int binarize_label(const std::string& original_label) {
    const std::string norm = normalize_label(original_label);
    if (norm.empty()) throw DataError("empty class label");
    return norm == "normal" ? 0 : 1;
}

DatasetSplit load_nslkdd(const std::string& path, NslVariant variant) {
    DatasetSplit split;
    split.source = Source::nslkdd;
    split.schema = TableSchema::nslkdd();
    switch (variant) {
        case NslVariant::train_plus: split.role = Role::target; break;
        case NslVariant::test_plus: split.role = Role::test_plus; break;
        case NslVariant::test_21: split.role = Role::test_21; break;
    }
    const size_t want = split.schema.columns.size(); // 43
    const int label_idx = split.schema.index_of("label");

    for_each_csv_row(path, [&](size_t row, std::vector<std::string>&& fields) {
        if (fields.size() != want) {
            throw DataError(path + ":" + std::to_string(row) + ": expected " +
                            std::to_string(want) + " columns, got " +
                            std::to_string(fields.size()));
        }
        RawRecord rec;
        rec.original_label = trim(fields[size_t(label_idx)]);
        rec.binary_label = binarize_label(rec.original_label);
        rec.values = std::move(fields);
        split.records.push_back(std::move(rec));
    });
    split.provenance = path + " (" + std::to_string(split.records.size()) + " rows)";
    return split;
}

DatasetSplit load_unswnb15(const std::vector<std::string>& paths, const TableSchema& schema) {
    if (paths.empty()) throw ConfigError("load_unswnb15: no input files");
    DatasetSplit split;
    split.role = Role::base;
    split.source = Source::unswnb15;
    split.schema = schema;

    const int cat_idx = schema.index_of("attack_cat");
    const int lab_idx = schema.index_of("label");
    if (cat_idx < 0 && lab_idx < 0) {
        throw DataError("schema '" + schema.name + "' declares neither attack_cat nor label");
    }

    for (const std::string& path : paths) {
        for_each_csv_row(path, [&](size_t row, std::vector<std::string>&& fields) {
            if (row == 1 && !fields.empty() &&
                to_lower(trim(fields[0])) == to_lower(schema.columns[0].name)) {
                // Header row: verify the full name list while we are at it.
                std::string unmatched;
                for (size_t i = 0; i < fields.size() && i < schema.columns.size(); ++i) {
                    if (to_lower(trim(fields[i])) != to_lower(schema.columns[i].name)) {
                        unmatched += (unmatched.empty() ? "" : ", ") + trim(fields[i]) + "!=" +
                                     schema.columns[i].name;
                    }
                }
                if (!unmatched.empty()) {
                    throw DataError(path + ": header does not match schema '" + schema.name +
                                    "': " + unmatched);
                }
                return;
            }
            if (fields.size() != schema.columns.size()) {
                throw DataError(path + ":" + std::to_string(row) + ": expected " +
                                std::to_string(schema.columns.size()) + " columns per schema '" +
                                schema.name + "', got " + std::to_string(fields.size()));
            }
            RawRecord rec;
            std::string cat = cat_idx >= 0 ? trim(fields[size_t(cat_idx)]) : std::string();
            if (!cat.empty()) {
                rec.original_label = cat;
                rec.binary_label = binarize_label(cat);
            } else if (lab_idx >= 0) {
                const std::string lab = trim(fields[size_t(lab_idx)]);
                if (lab.empty()) {
                    throw DataError(path + ":" + std::to_string(row) + ": empty class label");
                }
                rec.binary_label = (lab == "0") ? 0 : 1;
                rec.original_label = rec.binary_label == 0 ? "normal" : "attack";
            } else {
                throw DataError(path + ":" + std::to_string(row) + ": empty class label");
            }
            rec.values = std::move(fields);
            split.records.push_back(std::move(rec));
        });
        if (!split.provenance.empty()) split.provenance += "; ";
        split.provenance += path;
    }
    split.provenance += " (" + std::to_string(split.records.size()) + " rows)";
    return split;
}

DatasetStats compute_stats(const DatasetSplit& split,
                           const std::set<std::string>* training_attack_types) {
    DatasetStats st;
    int64_t novel = 0;
    for (const RawRecord& r : split.records) {
        if (r.binary_label == 0) {
            ++st.normal_count;
        } else {
            ++st.attack_count;
            if (training_attack_types != nullptr &&
                training_attack_types->count(normalize_label(r.original_label)) == 0) {
                ++novel;
            }
        }
    }
    const int64_t total = st.normal_count + st.attack_count;
    st.attack_pct = total > 0 ? 100.0 * double(st.attack_count) / double(total) : 0.0;
    if (training_attack_types != nullptr) {
        st.novel_attack_pct = total > 0 ? 100.0 * double(novel) / double(total) : 0.0;
    }
    return st;
}

std::set<std::string> attack_types(const DatasetSplit& split) {
    std::set<std::string> out;
    for (const RawRecord& r : split.records) {
        if (r.binary_label == 1) out.insert(normalize_label(r.original_label));
    }
    return out;
}

std::vector<std::pair<std::vector<size_t>, std::vector<size_t>>> kfold_indices(size_t n, int k,
                                                                               uint64_t seed) {
    if (k < 2) throw ConfigError("kfold: k must be >= 2");
    if (size_t(k) > n) {
        throw ConfigError("kfold: k=" + std::to_string(k) + " exceeds sample count " +
                          std::to_string(n));
    }
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng(seed);
    rng.shuffle(order);

    std::vector<std::pair<std::vector<size_t>, std::vector<size_t>>> folds;
    const size_t base = n / size_t(k), extra = n % size_t(k);
    size_t pos = 0;
    for (int f = 0; f < k; ++f) {
        const size_t len = base + (size_t(f) < extra ? 1 : 0);
        std::vector<size_t> val(order.begin() + pos, order.begin() + pos + len);
        std::vector<size_t> train;
        train.reserve(n - len);
        train.insert(train.end(), order.begin(), order.begin() + pos);
        train.insert(train.end(), order.begin() + pos + len, order.end());
        folds.emplace_back(std::move(train), std::move(val));
        pos += len;
    }
    return folds;
}

namespace {

DatasetSplit subset(const DatasetSplit& split, const std::vector<size_t>& idx,
                    const std::string& tag) {
    DatasetSplit out;
    out.role = split.role;
    out.source = split.source;
    out.schema = split.schema;
    out.records.reserve(idx.size());
    for (size_t i : idx) out.records.push_back(split.records[i]);
    out.provenance = split.provenance + " [" + tag + ", " + std::to_string(idx.size()) + " rows]";
    return out;
}

} // namespace

std::vector<std::pair<DatasetSplit, DatasetSplit>> kfold_split(const DatasetSplit& split, int k,
                                                               uint64_t seed) {
    std::vector<std::pair<DatasetSplit, DatasetSplit>> out;
    int f = 0;
    for (const auto& [train, val] : kfold_indices(split.size(), k, seed)) {
        out.emplace_back(subset(split, train, "fold" + std::to_string(f) + "-train"),
                         subset(split, val, "fold" + std::to_string(f) + "-val"));
        ++f;
    }
    return out;
}

DatasetSplit make_fixture(const DatasetSplit& split, size_t n_per_class, uint64_t seed) {
    std::vector<size_t> normals, attacks;
    for (size_t i = 0; i < split.records.size(); ++i) {
        (split.records[i].binary_label == 0 ? normals : attacks).push_back(i);
    }
    if (normals.size() < n_per_class || attacks.size() < n_per_class) {
        throw DataError("make_fixture: need " + std::to_string(n_per_class) +
                        " of each class, have " + std::to_string(normals.size()) + " normal / " +
                        std::to_string(attacks.size()) + " attack");
    }
    Rng rng(seed);
    rng.shuffle(normals);
    rng.shuffle(attacks);
    std::vector<size_t> picked(normals.begin(), normals.begin() + n_per_class);
    picked.insert(picked.end(), attacks.begin(), attacks.begin() + n_per_class);
    std::sort(picked.begin(), picked.end());
    return subset(split, picked, "fixture-" + std::to_string(n_per_class) + "/class");
}

std::pair<DatasetSplit, DatasetSplit> stratified_partition(const DatasetSplit& split,
                                                           double train_fraction, uint64_t seed) {
    if (!(train_fraction > 0.0) || !(train_fraction < 1.0)) {
        throw ConfigError("stratified_partition: train fraction must be in (0, 1)");
    }
    std::vector<size_t> normals, attacks;
    for (size_t i = 0; i < split.records.size(); ++i) {
        (split.records[i].binary_label == 0 ? normals : attacks).push_back(i);
    }
    Rng rng(seed);
    rng.shuffle(normals);
    rng.shuffle(attacks);

    std::vector<size_t> train_idx, test_idx;
    for (auto* cls : {&normals, &attacks}) {
        const size_t n_train = size_t(std::llround(train_fraction * double(cls->size())));
        train_idx.insert(train_idx.end(), cls->begin(), cls->begin() + n_train);
        test_idx.insert(test_idx.end(), cls->begin() + n_train, cls->end());
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());
    return {subset(split, train_idx, "train-portion"), subset(split, test_idx, "test-portion")};
}

} // namespace tlnid::data
