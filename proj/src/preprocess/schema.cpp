#include "preprocess/schema.hpp"

#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

#include "core/errors.hpp"
#include "data/csv.hpp"

namespace tlnid::prep {

using nlohmann::json;

namespace {

SlotKind slot_kind(const std::string& k) {
    if (k == "numeric") return SlotKind::numeric;
    if (k == "categorical") return SlotKind::categorical;
    throw DataError("unified schema: unknown slot kind '" + k + "'");
}

SlotSource slot_source(const std::string& s) {
    if (s == "shared") return SlotSource::shared;
    if (s == "nslkdd") return SlotSource::nslkdd_only;
    if (s == "unsw") return SlotSource::unsw_only;
    throw DataError("unified schema: unknown slot source '" + s + "'");
}

std::string kind_name(SlotKind k) { return k == SlotKind::numeric ? "numeric" : "categorical"; }

std::string source_name(SlotSource s) {
    switch (s) {
        case SlotSource::shared: return "shared";
        case SlotSource::nslkdd_only: return "nslkdd";
        case SlotSource::unsw_only: return "unsw";
    }
    return "?";
}

} // namespace

int UnifiedSchema::total_width() const {
    int w = 0;
    for (const Slot& s : slots) w += s.width();
    return w;
}

UnifiedSchema UnifiedSchema::from_json(const json& j) {
    UnifiedSchema schema;
    schema.version = j.value("version", 1);
    if (!j.contains("slots") || !j["slots"].is_array() || j["slots"].empty()) {
        throw DataError("unified schema: missing 'slots' array");
    }
    for (const auto& js : j["slots"]) {
        Slot s;
        s.name = js.at("name").get<std::string>();
        s.kind = slot_kind(js.at("kind").get<std::string>());
        s.source = slot_source(js.at("source").get<std::string>());
        s.nsl_field = js.value("nsl_field", "");
        s.unsw_field = js.value("unsw_field", "");
        if (js.contains("vocabulary")) {
            for (const auto& v : js["vocabulary"]) s.vocabulary.push_back(v.get<std::string>());
            if (s.kind == SlotKind::categorical &&
                std::find(s.vocabulary.begin(), s.vocabulary.end(), kUnknownCategory) ==
                    s.vocabulary.end()) {
                throw DataError("unified schema: slot '" + s.name +
                                "' vocabulary lacks the reserved '" +
                                std::string(kUnknownCategory) + "' entry");
            }
        }
        if (js.contains("aliases")) {
            for (const auto& [k, v] : js["aliases"].items()) {
                s.aliases[k] = v.get<std::string>();
            }
        }
        if (s.kind == SlotKind::numeric && !s.vocabulary.empty()) {
            throw DataError("unified schema: numeric slot '" + s.name + "' carries a vocabulary");
        }
        schema.slots.push_back(std::move(s));
    }
    return schema;
}

UnifiedSchema UnifiedSchema::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open unified schema " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError("unified schema " + path + ": " + e.what());
    }
    return from_json(j);
}

json UnifiedSchema::to_json() const {
    json slots_j = json::array();
    for (const Slot& s : slots) {
        json js{{"name", s.name},
                {"kind", kind_name(s.kind)},
                {"source", source_name(s.source)}};
        if (!s.nsl_field.empty()) js["nsl_field"] = s.nsl_field;
        if (!s.unsw_field.empty()) js["unsw_field"] = s.unsw_field;
        if (!s.vocabulary.empty()) js["vocabulary"] = s.vocabulary;
        if (!s.aliases.empty()) {
            json a = json::object();
            for (const auto& [k, v] : s.aliases) a[k] = v;
            js["aliases"] = a;
        }
        slots_j.push_back(std::move(js));
    }
    return json{{"version", version}, {"slots", slots_j}};
}

std::string normalize_category(const std::string& raw,
                               const std::map<std::string, std::string>& aliases) {
    std::string v = data::to_lower(data::trim(raw));
    if (auto it = aliases.find(v); it != aliases.end()) return it->second;
    std::replace(v.begin(), v.end(), '-', '_');
    if (auto it = aliases.find(v); it != aliases.end()) return it->second;
    return v;
}

} // namespace tlnid::prep
