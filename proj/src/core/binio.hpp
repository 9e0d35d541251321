#pragma once

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace tlnid {

// Little-endian byte-buffer writer/reader for the artifact file formats.
class ByteWriter {
public:
    void u8(uint8_t v) { buf_.push_back(char(v)); }
    void u16(uint16_t v) { le(v); }
    void u32(uint32_t v) { le(v); }
    void u64(uint64_t v) { le(v); }
    void f32(float v) {
        uint32_t bits;
        std::memcpy(&bits, &v, 4);
        le(bits);
    }
    void bytes(const void* p, size_t n) {
        const char* c = static_cast<const char*>(p);
        buf_.insert(buf_.end(), c, c + n);
    }
    void str(const std::string& s) { bytes(s.data(), s.size()); }

    const std::string& data() const { return buf_; }

private:
    template <class T>
    void le(T v) {
        for (size_t i = 0; i < sizeof(T); ++i) buf_.push_back(char((v >> (8 * i)) & 0xff));
    }

    std::string buf_;
};

class ByteReader {
public:
    ByteReader(const void* data, size_t n, std::string what)
        : p_(static_cast<const unsigned char*>(data)), n_(n), what_(std::move(what)) {}

    uint8_t u8() { return u8_at(take(1)); }
    uint16_t u16() { return uint16_t(le(2)); }
    uint32_t u32() { return uint32_t(le(4)); }
    uint64_t u64() { return le(8); }
    float f32() {
        const uint32_t bits = u32();
        float v;
        std::memcpy(&v, &bits, 4);
        return v;
    }
    std::string str(size_t n) {
        const size_t off = take(n);
        return std::string(reinterpret_cast<const char*>(p_ + off), n);
    }
    const unsigned char* raw(size_t n) { return p_ + take(n); }

    size_t offset() const { return off_; }
    size_t remaining() const { return n_ - off_; }

private:
    size_t take(size_t n) {
        if (off_ + n > n_) throw IoError(what_ + ": truncated (needs " + std::to_string(n) +
                                         " bytes at offset " + std::to_string(off_) + ")");
        const size_t at = off_;
        off_ += n;
        return at;
    }
    uint8_t u8_at(size_t at) const { return p_[at]; }
    uint64_t le(size_t n) {
        const size_t at = take(n);
        uint64_t v = 0;
        for (size_t i = 0; i < n; ++i) v |= uint64_t(p_[at + i]) << (8 * i);
        return v;
    }

    const unsigned char* p_;
    size_t n_;
    size_t off_ = 0;
    std::string what_;
};

std::string read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, const std::string& bytes);

} // namespace tlnid
