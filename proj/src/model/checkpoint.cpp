#include "model/checkpoint.hpp"

#include <nlohmann/json.hpp>

#include "core/binio.hpp"
#include "core/digest.hpp"
#include "core/errors.hpp"

namespace tlnid::model {

namespace {
constexpr char kMagic[5] = {'T', 'L', 'N', 'I', 'D'};
constexpr uint16_t kVersion = 1;
} // namespace

Checkpoint Checkpoint::from_model(const ComposedModel& m) {
    Checkpoint c;
    c.spec = m.spec;
    c.params.reserve(m.param_count());
    m.base.copy_params_to(c.params);
    m.top.copy_params_to(c.params);
    return c;
}

ComposedModel Checkpoint::to_model() const {
    ComposedModel m = build_model(spec, 0);
    std::vector<float> base_image, top_image;
    const size_t base_n = m.base.param_count();
    const size_t top_n = m.top.param_count();
    if (params.size() != base_n + top_n) {
        throw IoError("checkpoint: parameter count " + std::to_string(params.size()) +
                      " does not fit spec (" + std::to_string(base_n + top_n) + ")");
    }
    m.base.load_params_from(params.data(), base_n);
    m.top.load_params_from(params.data() + base_n, top_n);
    return m;
}

void Checkpoint::save(const std::string& path) const {
    const std::string spec_text = spec.canonical_text();
    ByteWriter w;
    w.bytes(kMagic, sizeof kMagic);
    w.u16(kVersion);
    w.u32(uint32_t(spec_text.size()));
    w.str(spec_text);
    w.u64(uint64_t(params.size()));
    for (const float v : params) w.f32(v);
    const uint64_t digest = fnv1a64(w.data().data(), w.data().size());
    w.u64(digest);
    write_file_bytes(path, w.data());
}

Checkpoint Checkpoint::load(const std::string& path) {
    const std::string bytes = read_file_bytes(path);
    if (bytes.size() < sizeof kMagic + 2 + 8) throw IoError(path + ": truncated checkpoint");
    const uint64_t computed = fnv1a64(bytes.data(), bytes.size() - 8);

    ByteReader r(bytes.data(), bytes.size(), path);
    if (r.str(sizeof kMagic) != std::string(kMagic, sizeof kMagic)) {
        throw IoError(path + ": not a checkpoint (bad magic)");
    }
    if (const uint16_t ver = r.u16(); ver != kVersion) {
        throw IoError(path + ": unsupported checkpoint version " + std::to_string(ver));
    }
    Checkpoint c;
    const uint32_t spec_len = r.u32();
    const std::string spec_text = r.str(spec_len);
    try {
        c.spec = ModelSpec::from_json(nlohmann::json::parse(spec_text));
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path + ": corrupt spec block: " + e.what());
    }
    const uint64_t n = r.u64();
    if (r.remaining() != n * 4 + 8) {
        throw IoError(path + ": truncated checkpoint (expected " + std::to_string(n) +
                      " parameter floats)");
    }
    c.params.reserve(n);
    for (uint64_t i = 0; i < n; ++i) c.params.push_back(r.f32());
    const uint64_t stored = r.u64();
    if (stored != computed) throw IoError(path + ": digest mismatch (corrupt checkpoint)");
    return c;
}

} // namespace tlnid::model
