#pragma once
// Checkpoint files for partitioned batch scans.
//
// Layout (little-endian):
//   "MCCK"  u32 version  u32 kind  i32 batch  u32 all_units  u32 parts
//   parts x { u64 begin, u64 end, u64 cursor, u64 count, u64 hits }
//   u64 FNV-1a of every preceding byte
// begin/end/cursor are codeword indices into batch_codewords(batch).

#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mirrorcert {

class CacheCorrupt : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PartitionState {
    std::uint64_t begin = 0, end = 0, cursor = 0, count = 0, hits = 0;
    bool done() const { return cursor >= end; }
    friend bool operator==(const PartitionState&, const PartitionState&) = default;
};

struct ScanCheckpoint {
    std::uint32_t kind = 0;
    std::int32_t batch = 0;
    bool all_units = false;
    std::vector<PartitionState> parts;

    bool complete() const {
        for (const auto& p : parts)
            if (!p.done()) return false;
        return true;
    }
    friend bool operator==(const ScanCheckpoint&, const ScanCheckpoint&) = default;
};

inline constexpr std::uint32_t kCacheVersion = 1;

namespace detail {

inline void put_u32(std::string& s, std::uint32_t v) {
    for (int k = 0; k < 4; ++k) s.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
}
inline void put_u64(std::string& s, std::uint64_t v) {
    for (int k = 0; k < 8; ++k) s.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
}
inline std::uint64_t get_le(const std::string& s, std::size_t& pos, int bytes) {
    if (pos + bytes > s.size()) throw CacheCorrupt("checkpoint truncated");
    std::uint64_t v = 0;
    for (int k = 0; k < bytes; ++k) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[pos + k])) << (8 * k);
    pos += bytes;
    return v;
}
inline std::uint64_t fnv1a(const std::string& s, std::size_t n) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t k = 0; k < n; ++k) {
        h ^= static_cast<unsigned char>(s[k]);
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace detail

inline std::string encode_checkpoint(const ScanCheckpoint& cp) {
    std::string s = "MCCK";
    detail::put_u32(s, kCacheVersion);
    detail::put_u32(s, cp.kind);
    detail::put_u32(s, static_cast<std::uint32_t>(cp.batch));
    detail::put_u32(s, cp.all_units ? 1 : 0);
    detail::put_u32(s, static_cast<std::uint32_t>(cp.parts.size()));
    for (const auto& p : cp.parts) {
        detail::put_u64(s, p.begin);
        detail::put_u64(s, p.end);
        detail::put_u64(s, p.cursor);
        detail::put_u64(s, p.count);
        detail::put_u64(s, p.hits);
    }
    detail::put_u64(s, detail::fnv1a(s, s.size()));
    return s;
}

inline ScanCheckpoint decode_checkpoint(const std::string& s) {
    if (s.size() < 4 || s.compare(0, 4, "MCCK") != 0) throw CacheCorrupt("checkpoint magic mismatch");
    std::size_t pos = 4;
    if (detail::get_le(s, pos, 4) != kCacheVersion) throw CacheCorrupt("unsupported checkpoint version");
    ScanCheckpoint cp;
    cp.kind = static_cast<std::uint32_t>(detail::get_le(s, pos, 4));
    cp.batch = static_cast<std::int32_t>(detail::get_le(s, pos, 4));
    std::uint64_t au = detail::get_le(s, pos, 4);
    if (au > 1) throw CacheCorrupt("checkpoint flag field out of range");
    cp.all_units = au == 1;
    std::uint64_t n = detail::get_le(s, pos, 4);
    if (n > (1u << 20) || s.size() != pos + n * 40 + 8) throw CacheCorrupt("checkpoint length mismatch");
    for (std::uint64_t k = 0; k < n; ++k) {
        PartitionState p;
        p.begin = detail::get_le(s, pos, 8);
        p.end = detail::get_le(s, pos, 8);
        p.cursor = detail::get_le(s, pos, 8);
        p.count = detail::get_le(s, pos, 8);
        p.hits = detail::get_le(s, pos, 8);
        if (p.begin > p.end || p.cursor < p.begin || p.cursor > p.end) throw CacheCorrupt("checkpoint range out of order");
        cp.parts.push_back(p);
    }
    std::size_t body = pos;
    if (detail::get_le(s, pos, 8) != detail::fnv1a(s, body)) throw CacheCorrupt("checkpoint checksum mismatch");
    return cp;
}

inline std::string checkpoint_path(const std::string& dir, const std::string& kind_name, int batch, bool all_units) {
    std::string name = kind_name + "-b" + std::to_string(batch) + (all_units ? "-units" : "") + ".ckpt";
    return (std::filesystem::path(dir) / name).string();
}

// Atomic replace: a crash leaves either the old or the new checkpoint.
inline void save_checkpoint(const std::string& path, const ScanCheckpoint& cp) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        std::string data = encode_checkpoint(cp);
        f.write(data.data(), static_cast<std::streamsize>(data.size()));
        if (!f) throw std::runtime_error("cannot write checkpoint " + tmp);
    }
    std::filesystem::rename(tmp, p);
}

inline std::optional<ScanCheckpoint> load_checkpoint(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) return std::nullopt;
    std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return decode_checkpoint(data);
}

}  // namespace mirrorcert
