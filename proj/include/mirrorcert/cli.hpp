#pragma once
// Command-line surface. Exit codes:
//   0  every selected check passed / enumeration finished
//   1  at least one selected check failed or errored
//   2  unknown check id or bad usage
//   3  corrupt cache file

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mirrorcert/certify.hpp"

namespace mirrorcert {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCacheCorrupt = 3;

inline constexpr const char* kCacheEnv = "MIRROR_CERT_CACHE";

// The flag wins over the environment.
inline std::optional<std::string> resolve_cache_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* e = std::getenv(kCacheEnv); e && *e) return std::string(e);
    return std::nullopt;
}

inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

struct VerifyArgs {
    std::vector<std::string> checks;
    bool all = false;
    std::string tier = "fast";
    unsigned threads = default_threads();
    std::string cache_dir;
    bool json = false;
    std::string out;
    bool resume = false;
};

struct EnumerateArgs {
    int batch = -1;
    bool count = false;
    unsigned threads = default_threads();
    bool all_units = false;
    std::string cache_dir;
    bool resume = false;
    std::string out;
};

inline int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
    if (a.all == !a.checks.empty()) {
        err << "verify: give exactly one of --check or --all\n";
        return kExitUsage;
    }
    RunOptions opt;
    opt.tier = *parse_tier(a.tier);
    opt.threads = a.threads;
    opt.cache_dir = resolve_cache_dir(a.cache_dir);
    opt.resume = a.resume;

    std::vector<const CheckDescriptor*> sel;
    try {
        for (const auto& id : a.checks) sel.push_back(&find_check(id));
    } catch (const UnknownCheck& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    std::vector<CheckReport> reports;
    try {
        if (a.all) {
            reports = run_all(opt);
        } else {
            for (const auto* d : sel) reports.push_back(run_check(*d, opt));
        }
    } catch (const CacheCorrupt& e) {
        err << "cache corrupt: " << e.what() << "\n";
        return kExitCacheCorrupt;
    }

    std::string body;
    if (a.json) {
        body = render_json(reports);
    } else {
        for (const auto& r : reports) body += render_text(r);
        std::size_t ok = 0;
        for (const auto& r : reports) ok += r.passed();
        body += std::to_string(ok) + "/" + std::to_string(reports.size()) + " checks passed (tier " +
                tier_name(opt.tier) + ")\n";
    }
    if (a.out.empty()) {
        out << body;
    } else {
        std::ofstream f(a.out, std::ios::binary);
        if (!(f << body)) {
            err << "cannot write " << a.out << "\n";
            return kExitFail;
        }
    }
    return all_passed(reports) ? kExitPass : kExitFail;
}

// Count mode checkpoints per partition under the cache directory; stream
// mode writes one canonical root per line and is restartable only by rerun.
inline int cmd_enumerate(const EnumerateArgs& a, std::ostream& out, std::ostream& err) {
    std::ofstream file;
    std::ostream* os = &out;
    if (!a.out.empty()) {
        file.open(a.out, std::ios::binary);
        if (!file) {
            err << "cannot write " << a.out << "\n";
            return kExitFail;
        }
        os = &file;
    }
    try {
        if (a.count) {
            ScanOptions so;
            so.threads = a.threads;
            so.cache_dir = resolve_cache_dir(a.cache_dir);
            so.resume = a.resume;
            *os << count_batch(a.batch, a.all_units, so) << "\n";
        } else {
            BatchStream s(a.batch, a.all_units);
            SmallRoot r;
            while (s.next(r)) *os << render_root(r) << "\n";
        }
    } catch (const CacheCorrupt& e) {
        err << "cache corrupt: " << e.what() << "\n";
        return kExitCacheCorrupt;
    }
    os->flush();
    return *os ? kExitPass : kExitFail;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    CLI::App app{"Exact certification of the mirror arrangement checks"};
    app.require_subcommand(1);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run checks and report pass/fail");
    verify->add_option("--check", va.checks, "Check id (repeatable)");
    verify->add_flag("--all", va.all, "Run every registered check");
    verify->add_option("--tier", va.tier, "fast or long; long scans batches 4-5")
        ->check(CLI::IsMember({"fast", "long"}));
    verify->add_option("--threads", va.threads, "Worker threads")->check(CLI::PositiveNumber);
    verify->add_option("--cache-dir", va.cache_dir, std::string("Checkpoint directory (else $") + kCacheEnv + ")");
    verify->add_flag("--json", va.json, "Emit a JSON array of reports");
    verify->add_option("--out", va.out, "Write the report to this file");
    verify->add_flag("--resume", va.resume, "Continue scans from checkpoints");

    EnumerateArgs ea;
    auto* enumerate = app.add_subcommand("enumerate", "Stream or count the roots of a batch");
    enumerate->add_option("--batch", ea.batch, "Batch index 0..5")->required()->check(CLI::Range(0, 5));
    enumerate->add_flag("--count", ea.count, "Print the count only");
    enumerate->add_option("--threads", ea.threads, "Worker threads")->check(CLI::PositiveNumber);
    enumerate->add_flag("--all-units", ea.all_units, "All six unit multiples instead of one per class");
    enumerate->add_option("--cache-dir", ea.cache_dir, std::string("Checkpoint directory (else $") + kCacheEnv + ")");
    enumerate->add_flag("--resume", ea.resume, "Continue the count from checkpoints");
    enumerate->add_option("--out", ea.out, "Write output to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << "run with --help for usage\n";
        return kExitUsage;
    }

    if (*verify) return cmd_verify(va, out, err);
    return cmd_enumerate(ea, out, err);
}

}  // namespace mirrorcert
