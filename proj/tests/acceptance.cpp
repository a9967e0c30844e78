// Acceptance run: one PASS/FAIL line per criterion. Criterion 2 requests
// the long tier explicitly; criterion 11 delegates to the property and
// enumeration test binaries given on the command line.
//
//   acceptance <test_properties> <test_enumerate>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <thread>

#include "mirrorcert/certify.hpp"

using namespace mirrorcert;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool c, const std::string& what) {
        if (!c) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::int64_t count_or(const CheckReport& r, const std::string& k) {
    auto it = r.counts.find(k);
    return it == r.counts.end() ? -1 : it->second;
}

std::string witness_or(const CheckReport& r, const std::string& label) {
    for (const auto& w : r.witnesses)
        if (w.label == label) return w.value;
    return "";
}

void require_pass(Outcome& o, const CheckReport& r) {
    o.require(r.passed(), r.id + " " + status_name(r.status));
}

void require_count(Outcome& o, const CheckReport& r, const std::string& k, std::int64_t want) {
    std::int64_t got = count_or(r, k);
    o.require(got == want, r.id + "." + k + " = " + std::to_string(got) + ", want " + std::to_string(want));
}

void require_within(Outcome& o, Clock::time_point t0, double limit_s) {
    double s = seconds_since(t0);
    o.require(s < limit_s, "took " + std::to_string(s) + " s, limit " + std::to_string(limit_s) + " s");
}

unsigned worker_threads() { return std::max(2u, std::thread::hardware_concurrency()); }

int failures = 0;

void criterion(int n, const std::string& title, const std::function<Outcome()>& body) {
    auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail = std::string("exception: ") + e.what();
    }
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.1f s", seconds_since(t0));
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << n << " " << title << " (" << secs << ")";
    if (!o.detail.empty()) std::cout << ": " << o.detail;
    std::cout << std::endl;
    failures += !o.ok;
}

bool run_binary(const std::string& cmd) {
    std::cout.flush();
    int rc = std::system((cmd + " > /dev/null").c_str());
    return rc == 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: acceptance <test_properties> <test_enumerate>\n";
        return 2;
    }
    const std::string properties_bin = argv[1], enumerate_bin = argv[2];
    const RunOptions fast{};

    criterion(1, "batch counts 0-3", [] {
        Outcome o;
        auto t0 = Clock::now();
        const std::uint64_t want[4] = {13, 1053, 116532, 743418};
        for (int b = 0; b < 4; ++b) {
            std::uint64_t got = BatchStream(b).count();
            o.require(got == want[b], "batch " + std::to_string(b) + " = " + std::to_string(got));
        }
        require_within(o, t0, 300);
        return o;
    });

    criterion(2, "batch counts 4-5 (long tier)", [] {
        Outcome o;
        ScanOptions so;
        so.threads = worker_threads();
        o.require(count_batch(4, false, so) == 107953560, "batch 4 count");
        o.require(count_batch(5, false, so) == 480961338, "batch 5 count");
        return o;
    });

    criterion(3, "determinants and theta-duality", [&] {
        Outcome o;
        auto t0 = Clock::now();
        require_pass(o, run_check("dual-and-det", fast));
        require_within(o, t0, 10);
        return o;
    });

    criterion(4, "mirrors meeting rho q X/Y/Z: 937, 2811, 460, 449, 4 survivors", [&] {
        Outcome o;
        auto t0 = Clock::now();
        auto r = run_check("triangle-a2", fast);
        require_pass(o, r);
        require_count(o, r, "Sxy", 937);
        require_count(o, r, "Sqxy", 2811);
        require_count(o, r, "meet", 460);
        require_count(o, r, "cs_reject", 449);
        require_count(o, r, "survivors", 4);
        require_within(o, t0, 60);
        return o;
    });

    criterion(5, "closest vectors: 3, 36, 13, 13", [&] {
        Outcome o;
        auto t0 = Clock::now();
        auto near = run_check("near-theta", fast);
        auto center = run_check("center-lemma", fast);
        require_pass(o, near);
        require_pass(o, center);
        require_count(o, near, "neighbors6", 3);
        require_count(o, near, "neighbors9", 36);
        require_count(o, center, "Lambda_near_C", 13);
        require_count(o, center, "Lambda_over_theta_near_C", 13);
        require_within(o, t0, 60);
        return o;
    });

    criterion(6, "26 mirrors nearest tau over batches 0-2", [&] {
        Outcome o;
        auto t0 = Clock::now();
        auto r = run_check("mirrors-near-tau", fast);
        require_pass(o, r);
        require_count(o, r, "minimizers", 26);
        std::string want = render(RealQuad(6, 8).inverse());
        o.require(witness_or(r, "min sinh^2") == want, "min sinh^2 = " + witness_or(r, "min sinh^2"));
        require_within(o, t0, 120);
        return o;
    });

    criterion(7, "ten triangles meet only the stated mirrors", [&] {
        Outcome o;
        for (const char* id :
             {"triangle-a1", "triangle-a2", "step1-triangles", "step4-point", "step4-line", "complex-triangles"})
            require_pass(o, run_check(id, fast));
        return o;
    });

    criterion(8, "explicit root sequences", [&] {
        Outcome o;
        auto t0 = Clock::now();
        require_pass(o, run_check("sequences", fast));
        require_within(o, t0, 1);
        return o;
    });

    criterion(9, "translation and triflection identities", [&] {
        Outcome o;
        auto t0 = Clock::now();
        require_pass(o, run_check("translations", fast));
        require_within(o, t0, 1);
        return o;
    });

    criterion(10, "isometry between the two models of L", [&] {
        Outcome o;
        auto t0 = Clock::now();
        require_pass(o, run_check("model-isometry", fast));
        require_within(o, t0, 1);
        return o;
    });

    criterion(11, "property suites and construction-vs-filter", [&] {
        Outcome o;
        o.require(run_binary(properties_bin), "property suite failed");
        o.require(run_binary(enumerate_bin + " --gtest_filter=ConstructionVsFilter.*"),
                  "construction-vs-filter failed");
        return o;
    });

    criterion(12, "identical reports across thread counts", [] {
        Outcome o;
        RunOptions one, many;
        many.threads = worker_threads();
        std::string a = render_json(run_all(one), false), b = render_json(run_all(many), false);
        o.require(a == b, "JSON reports differ between 1 and " + std::to_string(many.threads) + " threads");
        return o;
    });

    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " criteria FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}
