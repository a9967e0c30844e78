#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mirrorcert/cli.hpp"

using namespace mirrorcert;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "mirror_cert");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("mirrorcert-test-" + std::to_string(::getpid()) + "-" +
                                             std::to_string(counter_++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string str() const { return path_.string(); }

private:
    fs::path path_;
    static inline int counter_ = 0;
};

}  // namespace

TEST(Cli, EnumerateCounts) {
    auto r = cli({"enumerate", "--batch", "1", "--count"});
    EXPECT_EQ(r.code, kExitPass);
    EXPECT_EQ(r.out, "1053\n");
    auto r3 = cli({"enumerate", "--batch", "3", "--count", "--threads", "1"});
    auto r8 = cli({"enumerate", "--batch", "3", "--count", "--threads", "8"});
    EXPECT_EQ(r3.out, "743418\n");
    EXPECT_EQ(r8.out, r3.out);
}

TEST(Cli, EnumerateStreamsBatch0) {
    auto r = cli({"enumerate", "--batch", "0"});
    EXPECT_EQ(r.code, kExitPass);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 13);
    auto u = cli({"enumerate", "--batch", "0", "--all-units"});
    EXPECT_EQ(std::count(u.out.begin(), u.out.end(), '\n'), 78);
}

TEST(Cli, UsageErrorsExit2) {
    EXPECT_EQ(cli({"verify", "--check", "no-such-check"}).code, kExitUsage);
    EXPECT_EQ(cli({"verify"}).code, kExitUsage);
    EXPECT_EQ(cli({"verify", "--all", "--check", "near-theta"}).code, kExitUsage);
    EXPECT_EQ(cli({"verify", "--all", "--tier", "medium"}).code, kExitUsage);
    EXPECT_EQ(cli({"verify", "--all", "--threads", "0"}).code, kExitUsage);
    EXPECT_EQ(cli({"enumerate", "--batch", "6"}).code, kExitUsage);
    EXPECT_EQ(cli({"enumerate"}).code, kExitUsage);
    EXPECT_EQ(cli({}).code, kExitUsage);
    auto r = cli({"verify", "--check", "no-such-check"});
    EXPECT_NE(r.err.find("no-such-check"), std::string::npos);
}

TEST(Cli, VerifySingleCheckJson) {
    auto r = cli({"verify", "--check", "near-theta", "--json"});
    ASSERT_EQ(r.code, kExitPass) << r.err;
    auto j = nlohmann::json::parse(r.out);
    ASSERT_TRUE(j.is_array());
    ASSERT_EQ(j.size(), 1u);
    EXPECT_EQ(j[0]["schema"], "1");
    EXPECT_EQ(j[0]["id"], "near-theta");
    EXPECT_EQ(j[0]["status"], "pass");
    EXPECT_EQ(j[0]["counts"]["neighbors6"], 3);
    EXPECT_EQ(j[0]["counts"]["neighbors9"], 36);
    EXPECT_TRUE(j[0]["duration_ms"].is_number_integer());
}

TEST(Cli, VerifyWritesOutFile) {
    TempDir d;
    std::string path = d.str() + "/report.txt";
    auto r = cli({"verify", "--check", "gram-constants", "--out", path});
    EXPECT_EQ(r.code, kExitPass);
    EXPECT_TRUE(r.out.empty());
    std::ifstream f(path);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    EXPECT_NE(text.find("[pass] gram-constants"), std::string::npos);
}

TEST(Cli, Step4LineFastTierNotesSkippedBatches) {
    auto r = cli({"verify", "--check", "step4-line", "--tier", "fast"});
    EXPECT_EQ(r.code, kExitPass);
    EXPECT_NE(r.out.find("batches 4-5 skipped"), std::string::npos);
    EXPECT_EQ(r.out.find("batch4"), std::string::npos);
}

TEST(Cache, FlagWinsOverEnvironment) {
    ::setenv(kCacheEnv, "/from/env", 1);
    EXPECT_EQ(resolve_cache_dir(""), std::optional<std::string>("/from/env"));
    EXPECT_EQ(resolve_cache_dir("/from/flag"), std::optional<std::string>("/from/flag"));
    ::unsetenv(kCacheEnv);
    EXPECT_EQ(resolve_cache_dir(""), std::nullopt);
}

TEST(Cache, CorruptCheckpointExits3) {
    TempDir d;
    ASSERT_EQ(cli({"enumerate", "--batch", "2", "--count", "--cache-dir", d.str()}).code, kExitPass);
    std::string path = checkpoint_path(d.str(), "count", 2, false);
    ASSERT_TRUE(fs::exists(path));
    {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(static_cast<std::streamoff>(fs::file_size(path) / 2));
        char c;
        f.read(&c, 1);
        f.seekp(static_cast<std::streamoff>(fs::file_size(path) / 2));
        c = static_cast<char>(c ^ 0x5a);
        f.write(&c, 1);
    }
    EXPECT_THROW(load_checkpoint(path), CacheCorrupt);
    auto r = cli({"enumerate", "--batch", "2", "--count", "--cache-dir", d.str(), "--resume"});
    EXPECT_EQ(r.code, kExitCacheCorrupt);

    std::ofstream(path, std::ios::binary | std::ios::trunc) << "MCCK";
    EXPECT_EQ(cli({"enumerate", "--batch", "2", "--count", "--cache-dir", d.str(), "--resume"}).code,
              kExitCacheCorrupt);
}

TEST(Cache, ResumeAfterInterruptionGivesIdenticalCount) {
    TempDir d;
    ScanOptions o;
    o.cache_dir = d.str();
    o.checkpoint_every = 1;
    std::uint64_t seen = 0;
    struct Interrupted {};
    EXPECT_THROW(scan_batch(2, false, ScanKind::Count, o,
                            [&](const SmallRoot&) {
                                if (++seen == 50000) throw Interrupted{};
                                return false;
                            }),
                 Interrupted);
    auto cp = load_checkpoint(checkpoint_path(d.str(), "count", 2, false));
    ASSERT_TRUE(cp.has_value());
    std::uint64_t partial = 0;
    for (const auto& p : cp->parts) partial += p.count;
    EXPECT_GT(partial, 0u);
    EXPECT_LT(partial, 116532u);

    ::setenv(kCacheEnv, d.str().c_str(), 1);
    auto r = cli({"enumerate", "--batch", "2", "--count", "--resume", "--threads", "2"});
    ::unsetenv(kCacheEnv);
    EXPECT_EQ(r.code, kExitPass);
    EXPECT_EQ(r.out, "116532\n");

    ScanOptions again = o;
    again.resume = true;
    auto res = scan_batch(2, false, ScanKind::Count, again, [](const SmallRoot&) { return false; });
    EXPECT_TRUE(res.resumed);
    EXPECT_EQ(res.count, 116532u);
}

TEST(Cache, MismatchedLayoutIsCorrupt) {
    TempDir d;
    ScanOptions o;
    o.cache_dir = d.str();
    o.partitions = 8;
    count_batch(1, false, o);
    o.partitions = 16;
    o.resume = true;
    EXPECT_THROW(count_batch(1, false, o), CacheCorrupt);
}
