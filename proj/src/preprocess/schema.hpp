#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "data/dataset.hpp"

namespace tlnid::prep {

enum class SlotKind { numeric, categorical };
enum class SlotSource { shared, nslkdd_only, unsw_only };

// One dimension group of the unified feature vector. Numeric slots occupy one
// dimension; categorical slots occupy |vocabulary| one-hot dimensions with
// the reserved "unknown" value always present (and last once resolved).
struct Slot {
    std::string name;
    SlotKind kind = SlotKind::numeric;
    SlotSource source = SlotSource::shared;
    std::string nsl_field;  // empty when the slot is not mapped for NSL-KDD
    std::string unsw_field; // empty when the slot is not mapped for UNSW-NB15
    std::vector<std::string> vocabulary;           // empty -> fitted from training data
    std::map<std::string, std::string> aliases;    // normalized raw value -> vocabulary value

    int width() const { return kind == SlotKind::numeric ? 1 : int(vocabulary.size()); }
    const std::string& field_for(data::Source s) const {
        return s == data::Source::nslkdd ? nsl_field : unsw_field;
    }
};

// The cross-dataset feature layout mapping both NSL-KDD and UNSW-NB15 records
// into one fixed-width vector space. The shipped default is 113 wide.
struct UnifiedSchema {
    int version = 1;
    std::vector<Slot> slots;

    int total_width() const;

    static UnifiedSchema load(const std::string& path);
    static UnifiedSchema from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

// trim + lowercase, alias lookup, then '-' -> '_'. Vocabulary entries are
// stored already normalized.
std::string normalize_category(const std::string& raw,
                               const std::map<std::string, std::string>& aliases);

inline constexpr const char* kUnknownCategory = "unknown";

} // namespace tlnid::prep
