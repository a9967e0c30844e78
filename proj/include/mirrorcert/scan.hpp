#pragma once
// Fork-join scans over batch partitions with optional checkpointing.
// The partition layout is fixed by partition_batch, so counts and hit
// samples do not depend on the thread count.

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "mirrorcert/cache.hpp"
#include "mirrorcert/enumerate.hpp"

namespace mirrorcert {

enum class ScanKind : std::uint32_t { Count = 0, Step4Line = 1 };

inline const char* scan_kind_name(ScanKind k) { return k == ScanKind::Count ? "count" : "step4-line"; }

struct ScanOptions {
    unsigned threads = 1;
    std::size_t partitions = 64;
    std::optional<std::string> cache_dir;
    bool resume = false;
    std::size_t checkpoint_every = 8;  // codewords per partition between saves
    std::size_t max_samples = 16;
};

struct ScanResult {
    std::uint64_t count = 0;
    std::uint64_t hits = 0;
    std::vector<std::string> samples;  // sorted renderings of hit roots seen in this session
    bool resumed = false;
};

// pred(root) -> true when the root is a hit. Must be safe to call concurrently.
template <class Pred>
ScanResult scan_batch(int b, bool all_units, ScanKind kind, const ScanOptions& opt, Pred pred) {
    const auto ranges = partition_batch(b, std::max<std::size_t>(opt.partitions, 1), all_units);
    ScanCheckpoint cp;
    cp.kind = static_cast<std::uint32_t>(kind);
    cp.batch = b;
    cp.all_units = all_units;
    for (const auto& r : ranges) cp.parts.push_back({r.begin, r.end, r.begin, 0, 0});

    std::string path;
    ScanResult res;
    if (opt.cache_dir) {
        path = checkpoint_path(*opt.cache_dir, scan_kind_name(kind), b, all_units);
        if (opt.resume) {
            if (auto old = load_checkpoint(path)) {
                bool same = old->kind == cp.kind && old->batch == cp.batch && old->all_units == cp.all_units &&
                            old->parts.size() == cp.parts.size();
                for (std::size_t k = 0; same && k < cp.parts.size(); ++k)
                    same = old->parts[k].begin == cp.parts[k].begin && old->parts[k].end == cp.parts[k].end;
                if (!same) throw CacheCorrupt("checkpoint does not match the partition layout: " + path);
                cp = *old;
                res.resumed = true;
            }
        }
    }

    std::mutex mu;
    std::vector<std::vector<std::string>> samples(cp.parts.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    auto body = [&] {
        for (;;) {
            std::size_t k = next.fetch_add(1);
            if (k >= cp.parts.size()) return;
            PartitionState st;
            {
                std::lock_guard<std::mutex> lock(mu);
                st = cp.parts[k];
            }
            BatchStream stream(b, st.cursor, st.end, all_units);
            while (st.cursor < st.end) {
                std::size_t stop = std::min<std::uint64_t>(st.cursor + opt.checkpoint_every, st.end);
                stream.drain_until(stop, [&](const SmallRoot& r) {
                    ++st.count;
                    if (pred(r)) {
                        ++st.hits;
                        if (samples[k].size() < opt.max_samples) samples[k].push_back(render_root(r));
                    }
                });
                st.cursor = stop;
                std::lock_guard<std::mutex> lock(mu);
                cp.parts[k] = st;
                if (!path.empty()) save_checkpoint(path, cp);
            }
        }
    };
    auto worker = [&] {
        try {
            body();
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (!err) err = std::current_exception();
            next = cp.parts.size();
        }
    };
    unsigned nt = std::max(1u, opt.threads);
    if (nt == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (err) std::rethrow_exception(err);
    if (!path.empty()) save_checkpoint(path, cp);
    for (const auto& p : cp.parts) {
        res.count += p.count;
        res.hits += p.hits;
    }
    for (auto& s : samples) res.samples.insert(res.samples.end(), s.begin(), s.end());
    std::sort(res.samples.begin(), res.samples.end());
    if (res.samples.size() > opt.max_samples) res.samples.resize(opt.max_samples);
    return res;
}

inline std::uint64_t count_batch(int b, bool all_units, const ScanOptions& opt) {
    return scan_batch(b, all_units, ScanKind::Count, opt, [](const SmallRoot&) { return false; }).count;
}

}  // namespace mirrorcert
