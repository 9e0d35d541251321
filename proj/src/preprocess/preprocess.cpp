#include "preprocess/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>

#include <nlohmann/json.hpp>

#include "core/binio.hpp"
#include "core/digest.hpp"
#include "data/csv.hpp"

namespace tlnid::prep {

using nlohmann::json;

namespace {

std::optional<double> parse_numeric(const std::string& raw) {
    const std::string t = data::trim(raw);
    if (t.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0' || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::string format_numeric(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double sorted_median(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int unknown_index(const Slot& s) {
    for (size_t i = 0; i < s.vocabulary.size(); ++i) {
        if (s.vocabulary[i] == kUnknownCategory) return int(i);
    }
    throw DataError("slot '" + s.name + "': vocabulary lacks '" + kUnknownCategory + "'");
}

} // namespace

// ---- patch ---------------------------------------------------------------

PatchPolicy fit_patch(const data::DatasetSplit& training, const UnifiedSchema& schema) {
    PatchPolicy policy;
    policy.numeric_fill.assign(schema.slots.size(), 0.0);
    policy.has_fill.assign(schema.slots.size(), 0);

    for (size_t si = 0; si < schema.slots.size(); ++si) {
        const Slot& slot = schema.slots[si];
        if (slot.kind != SlotKind::numeric) continue;
        const std::string& field = slot.field_for(training.source);
        if (field.empty()) continue;
        const int col = training.schema.index_of(field);
        if (col < 0) continue;

        std::vector<double> values;
        values.reserve(training.records.size());
        for (const data::RawRecord& r : training.records) {
            if (const auto v = parse_numeric(r.values[size_t(col)])) values.push_back(*v);
        }
        if (values.empty()) {
            throw DataError("patch: numeric field '" + field +
                            "' has no usable value in any training row; median undefined");
        }
        policy.numeric_fill[si] = sorted_median(values);
        policy.has_fill[si] = 1;
    }
    return policy;
}

void patch(std::vector<data::RawRecord>& records, const data::TableSchema& table,
           data::Source source, const UnifiedSchema& schema, const PatchPolicy& policy) {
    for (size_t si = 0; si < schema.slots.size(); ++si) {
        const Slot& slot = schema.slots[si];
        const std::string& field = slot.field_for(source);
        if (field.empty()) continue;
        const int col = table.index_of(field);
        if (col < 0) continue;

        for (data::RawRecord& r : records) {
            std::string& cell = r.values[size_t(col)];
            if (slot.kind == SlotKind::numeric) {
                if (!parse_numeric(cell)) {
                    if (!policy.has_fill[si]) {
                        throw DataError("patch: no fill value fitted for numeric field '" + field +
                                        "'");
                    }
                    cell = format_numeric(policy.numeric_fill[si]);
                }
            } else if (data::trim(cell).empty()) {
                cell = kUnknownCategory;
            }
        }
    }
}

// ---- encode ----------------------------------------------------------------

void fit_encoder(UnifiedSchema& schema, const std::vector<data::RawRecord>& patched,
                 const data::TableSchema& table, data::Source source) {
    for (Slot& slot : schema.slots) {
        if (slot.kind != SlotKind::categorical || !slot.vocabulary.empty()) continue;
        const std::string& field = slot.field_for(source);
        const int col = field.empty() ? -1 : table.index_of(field);
        if (col < 0) {
            throw DataError("fit_encoder: categorical slot '" + slot.name +
                            "' has no mapped column to observe");
        }
        if (patched.empty()) {
            throw DataError("fit_encoder: categorical slot '" + slot.name +
                            "' observed zero values");
        }
        std::set<std::string> observed;
        for (const data::RawRecord& r : patched) {
            observed.insert(normalize_category(r.values[size_t(col)], slot.aliases));
        }
        observed.erase(kUnknownCategory);
        slot.vocabulary.assign(observed.begin(), observed.end()); // std::set is sorted
        slot.vocabulary.push_back(kUnknownCategory);
    }
}

std::vector<float> encode(const data::RawRecord& record, const data::TableSchema& table,
                          data::Source source, const UnifiedSchema& schema) {
    std::vector<float> out;
    out.reserve(size_t(schema.total_width()));
    for (const Slot& slot : schema.slots) {
        const std::string& field = slot.field_for(source);
        const int col = field.empty() ? -1 : table.index_of(field);

        if (slot.kind == SlotKind::numeric) {
            if (col < 0) {
                out.push_back(0.0f); // structurally absent for this dataset
            } else {
                const auto v = parse_numeric(record.values[size_t(col)]);
                if (!v) {
                    throw DataError("encode: unpatched gap in numeric field '" + field + "'");
                }
                out.push_back(float(*v));
            }
        } else {
            if (slot.vocabulary.empty()) {
                throw StateError("encode: slot '" + slot.name + "' has no fitted vocabulary");
            }
            int hit = unknown_index(slot);
            if (col >= 0) {
                const std::string v = normalize_category(record.values[size_t(col)], slot.aliases);
                const auto it = std::find(slot.vocabulary.begin(), slot.vocabulary.end(), v);
                if (it != slot.vocabulary.end()) hit = int(it - slot.vocabulary.begin());
            }
            const size_t base = out.size();
            out.resize(base + slot.vocabulary.size(), 0.0f);
            out[base + size_t(hit)] = 1.0f;
        }
    }
    return out;
}

// ---- scale ----------------------------------------------------------------

ScalerStats fit_scaler(const std::vector<float>& matrix, int width) {
    if (width <= 0 || matrix.size() % size_t(width) != 0) {
        throw ShapeError("fit_scaler: matrix size is not a multiple of width");
    }
    const size_t rows = matrix.size() / size_t(width);
    if (rows < 2) throw DataError("fit_scaler: needs at least 2 vectors");

    ScalerStats st;
    st.mean.assign(size_t(width), 0.0);
    st.stddev.assign(size_t(width), 0.0);
    st.constant.assign(size_t(width), 0);

    for (size_t r = 0; r < rows; ++r) {
        const float* row = matrix.data() + r * size_t(width);
        for (int d = 0; d < width; ++d) st.mean[size_t(d)] += double(row[d]);
    }
    for (int d = 0; d < width; ++d) st.mean[size_t(d)] /= double(rows);

    for (size_t r = 0; r < rows; ++r) {
        const float* row = matrix.data() + r * size_t(width);
        for (int d = 0; d < width; ++d) {
            const double diff = double(row[d]) - st.mean[size_t(d)];
            st.stddev[size_t(d)] += diff * diff;
        }
    }
    for (int d = 0; d < width; ++d) {
        st.stddev[size_t(d)] = std::sqrt(st.stddev[size_t(d)] / double(rows));
        if (st.stddev[size_t(d)] < 1e-12) st.constant[size_t(d)] = 1;
    }
    return st;
}

void scale(std::span<float> vec, const ScalerStats& stats) {
    if (vec.size() != stats.mean.size()) {
        throw ShapeError("scale: vector length " + std::to_string(vec.size()) +
                         " != fitted width " + std::to_string(stats.mean.size()));
    }
    for (size_t d = 0; d < vec.size(); ++d) {
        vec[d] = stats.constant[d] ? 0.0f
                                   : float((double(vec[d]) - stats.mean[d]) / stats.stddev[d]);
    }
}

nn::Tensor1D reshape(std::span<const float> vec, int expected_width) {
    if (int(vec.size()) != expected_width) {
        throw ShapeError("reshape: vector length " + std::to_string(vec.size()) +
                         " != configured width " + std::to_string(expected_width));
    }
    return nn::Tensor1D::from_values(std::vector<float>(vec.begin(), vec.end()));
}

// ---- fitted pipeline --------------------------------------------------------

PreprocessorState fit_preprocessor(const data::DatasetSplit& training,
                                   const UnifiedSchema& schema) {
    if (training.role != data::Role::base && training.role != data::Role::target) {
        throw ConfigError("fit_preprocessor: refusing to fit on split '" +
                          data::role_name(training.role) + "'; fit on training data only");
    }
    PreprocessorState state;
    state.schema = schema;
    state.table = training.schema;
    state.source = training.source;
    state.fitted_on =
        data::source_name(training.source) + " (" + std::to_string(training.size()) + " rows)";

    state.patch = fit_patch(training, state.schema);
    std::vector<data::RawRecord> patched = training.records;
    patch(patched, state.table, state.source, state.schema, state.patch);
    fit_encoder(state.schema, patched, state.table, state.source);

    const int width = state.schema.total_width();
    std::vector<float> matrix;
    matrix.reserve(patched.size() * size_t(width));
    for (const data::RawRecord& r : patched) {
        const std::vector<float> v = encode(r, state.table, state.source, state.schema);
        matrix.insert(matrix.end(), v.begin(), v.end());
    }
    state.scaler = fit_scaler(matrix, width);
    return state;
}

std::vector<float> transform_record(const PreprocessorState& state,
                                    const data::RawRecord& record) {
    std::vector<data::RawRecord> one{record};
    patch(one, state.table, state.source, state.schema, state.patch);
    std::vector<float> v = encode(one[0], state.table, state.source, state.schema);
    scale(v, state.scaler);
    return v;
}

EncodedDataset transform_split(const PreprocessorState& state, const data::DatasetSplit& split) {
    if (split.source != state.source) {
        throw ConfigError("transform_split: state fitted on " + data::source_name(state.source) +
                          " cannot transform " + data::source_name(split.source) + " records");
    }
    EncodedDataset out;
    out.width = state.schema.total_width();
    out.role = split.role;
    out.features.reserve(split.size() * size_t(out.width));
    out.labels.reserve(split.size());
    out.original_label_ids.reserve(split.size());

    std::map<std::string, int32_t> ids;
    std::vector<data::RawRecord> rows = split.records;
    patch(rows, state.table, state.source, state.schema, state.patch);
    for (size_t i = 0; i < rows.size(); ++i) {
        std::vector<float> v = encode(rows[i], state.table, state.source, state.schema);
        scale(v, state.scaler);
        out.features.insert(out.features.end(), v.begin(), v.end());
        out.labels.push_back(uint8_t(split.records[i].binary_label));

        const std::string norm = data::normalize_label(split.records[i].original_label);
        auto [it, inserted] = ids.emplace(norm, int32_t(out.label_names.size()));
        if (inserted) out.label_names.push_back(norm);
        out.original_label_ids.push_back(it->second);
    }
    return out;
}

// ---- EncodedDataset file format ----------------------------------------------

namespace {
constexpr char kVecMagic[6] = {'T', 'L', 'N', 'V', 'E', 'C'};
constexpr uint16_t kVecVersion = 1;
} // namespace

void EncodedDataset::save(const std::string& path) const {
    ByteWriter w;
    w.bytes(kVecMagic, sizeof kVecMagic);
    w.u16(kVecVersion);
    w.u8(uint8_t(role));
    w.u32(uint32_t(width));
    w.u64(uint64_t(size()));
    w.u32(uint32_t(label_names.size()));
    for (const std::string& name : label_names) {
        w.u16(uint16_t(name.size()));
        w.str(name);
    }
    for (size_t i = 0; i < size(); ++i) {
        for (const float v : row(i)) w.f32(v);
        w.u8(labels[i]);
        w.u32(uint32_t(original_label_ids[i]));
    }
    const uint64_t digest = fnv1a64(w.data().data(), w.data().size());
    w.u64(digest);
    write_file_bytes(path, w.data());
}

EncodedDataset EncodedDataset::load(const std::string& path) {
    const std::string bytes = read_file_bytes(path);
    if (bytes.size() < sizeof kVecMagic + 8) throw IoError(path + ": truncated vector file");
    const uint64_t stored = fnv1a64(bytes.data(), bytes.size() - 8);

    ByteReader r(bytes.data(), bytes.size(), path);
    if (r.str(sizeof kVecMagic) != std::string(kVecMagic, sizeof kVecMagic)) {
        throw IoError(path + ": not a vector file (bad magic)");
    }
    if (const uint16_t ver = r.u16(); ver != kVecVersion) {
        throw IoError(path + ": unsupported vector file version " + std::to_string(ver));
    }
    EncodedDataset out;
    out.role = data::Role(r.u8());
    out.width = int(r.u32());
    const uint64_t rows = r.u64();
    const uint32_t n_labels = r.u32();
    for (uint32_t i = 0; i < n_labels; ++i) {
        const uint16_t len = r.u16();
        out.label_names.push_back(r.str(len));
    }
    out.features.reserve(size_t(rows) * size_t(out.width));
    for (uint64_t i = 0; i < rows; ++i) {
        for (int d = 0; d < out.width; ++d) out.features.push_back(r.f32());
        out.labels.push_back(r.u8());
        out.original_label_ids.push_back(int32_t(r.u32()));
    }
    const uint64_t trailer = r.u64();
    if (trailer != stored) throw IoError(path + ": digest mismatch (corrupt vector file)");
    return out;
}

// ---- PreprocessorState serialization --------------------------------------------

json PreprocessorState::to_json() const {
    return json{{"version", version},
                {"schema", schema.to_json()},
                {"patch", {{"numeric_fill", patch.numeric_fill}, {"has_fill", patch.has_fill}}},
                {"scaler",
                 {{"mean", scaler.mean},
                  {"stddev", scaler.stddev},
                  {"constant", scaler.constant}}},
                {"table", table.to_json()},
                {"source", data::source_name(source)},
                {"fitted_on", fitted_on}};
}

PreprocessorState PreprocessorState::from_json(const json& j) {
    PreprocessorState s;
    s.version = j.at("version").get<int>();
    if (s.version != 1) {
        throw IoError("preprocessor state: unsupported version " + std::to_string(s.version));
    }
    s.schema = UnifiedSchema::from_json(j.at("schema"));
    s.patch.numeric_fill = j.at("patch").at("numeric_fill").get<std::vector<double>>();
    s.patch.has_fill = j.at("patch").at("has_fill").get<std::vector<uint8_t>>();
    s.scaler.mean = j.at("scaler").at("mean").get<std::vector<double>>();
    s.scaler.stddev = j.at("scaler").at("stddev").get<std::vector<double>>();
    s.scaler.constant = j.at("scaler").at("constant").get<std::vector<uint8_t>>();
    s.table = data::TableSchema::from_json(j.at("table"));
    s.source = data::source_from_name(j.at("source").get<std::string>());
    s.fitted_on = j.value("fitted_on", "");
    if (s.scaler.mean.size() != size_t(s.schema.total_width())) {
        throw IoError("preprocessor state: scaler width " + std::to_string(s.scaler.mean.size()) +
                      " != schema width " + std::to_string(s.schema.total_width()));
    }
    return s;
}

void PreprocessorState::save(const std::string& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out << to_json().dump(2) << '\n';
    if (!out) throw IoError("short write to " + path);
}

PreprocessorState PreprocessorState::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError(path + ": corrupt preprocessor state: " + e.what());
    }
    try {
        return from_json(j);
    } catch (const json::exception& e) {
        throw IoError(path + ": corrupt preprocessor state: " + e.what());
    }
}

} // namespace tlnid::prep
