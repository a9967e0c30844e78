// The batch construction against a brute-force filter: every vector of
// Eisenstein integers with the right norm profile, kept when it lies in L.

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "mirrorcert/hypgeom.hpp"
#include "mirrorcert/scan.hpp"

using namespace mirrorcert;

namespace {

using Key = std::array<std::int64_t, 28>;

Key key_of(const SmallRoot& r) {
    Key k;
    for (int i = 0; i < 14; ++i) {
        k[2 * i] = r[i].a;
        k[2 * i + 1] = r[i].b;
    }
    return k;
}

// Lexicographically least unit multiple.
Key class_key(const SmallRoot& r) {
    Key best{};
    for (int u = 0; u < 6; ++u) {
        SmallRoot m;
        for (int i = 0; i < 14; ++i) m[i] = r[i] * small_unit(u);
        Key k = key_of(m);
        if (u == 0 || k < best) best = k;
    }
    return best;
}

// Eisenstein integers of norm <= 6, grouped by norm.
std::vector<std::vector<SmallEis>> small_by_norm() {
    std::vector<std::vector<SmallEis>> out(7);
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b) {
            long n = a * a - a * b + b * b;
            if (n <= 6) out[n].emplace_back(a, b);
        }
    return out;
}

// All s with the given s_0, sum_{i>=1} |s_i|^2 = N, residue word in the
// line code and s_0 = (sum of residues) mod theta.
std::vector<SmallRoot> filter_batch(const std::vector<SmallEis>& s0_choices, int N) {
    const auto byn = small_by_norm();
    std::vector<SmallRoot> out;
    SmallRoot cur;
    cur.fill(SmallEis(0, 0));
    auto leaf = [&] {
        Word w{};
        int sum = 0;
        for (int k = 1; k <= 13; ++k) {
            w[k - 1] = static_cast<std::uint8_t>(cur[k].mod_theta());
            sum += w[k - 1];
        }
        if (cur[0].mod_theta() == sum % 3 && line_code().contains(w)) out.push_back(cur);
    };
    auto dfs = [&](auto&& self, int k, int rem) -> void {
        if (rem == 0) {
            for (int j = k; j <= 13; ++j) cur[j] = SmallEis(0, 0);
            leaf();
            return;
        }
        if (k == 14) return;
        for (int n = 0; n <= rem; ++n)
            for (const auto& e : byn[n]) {
                cur[k] = e;
                self(self, k + 1, rem - n);
            }
        cur[k] = SmallEis(0, 0);
    };
    for (const auto& s0 : s0_choices) {
        cur[0] = s0;
        dfs(dfs, 1, N);
    }
    return out;
}

std::vector<Key> constructed(int b, bool all_units) {
    std::vector<Key> out;
    BatchStream s(b, all_units);
    SmallRoot r;
    while (s.next(r)) out.push_back(key_of(r));
    return out;
}

std::vector<SmallEis> units() {
    std::vector<SmallEis> u;
    for (int k = 0; k < 6; ++k) u.push_back(small_unit(k));
    return u;
}

void expect_roots_of_batch(const std::vector<SmallRoot>& rs, int b) {
    const HermVec p_inf = NamedVectorsP::standard().p_inf;
    for (const auto& r : rs) {
        HermVec v = to_hermvec(r);
        ASSERT_EQ(norm(v), RealQuad(3));
        ASSERT_TRUE(member_L(v));
        ASSERT_EQ(batch_of(v, p_inf), b);
    }
}

}  // namespace

TEST(ConstructionVsFilter, Batch0Classes) {
    auto all = filter_batch({SmallEis(0, 0)}, 3);
    expect_roots_of_batch(all, 0);
    std::set<Key> classes;
    for (const auto& r : all) classes.insert(class_key(r));

    std::set<Key> built;
    {
        BatchStream s(0);
        SmallRoot r;
        while (s.next(r)) built.insert(class_key(r));
    }
    EXPECT_EQ(classes.size(), 13u);
    EXPECT_EQ(built, classes);

    std::vector<Key> want;
    for (const auto& r : all) want.push_back(key_of(r));
    std::sort(want.begin(), want.end());
    auto got = constructed(0, true);
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got.size(), 78u);
    EXPECT_EQ(got, want);
}

TEST(ConstructionVsFilter, Batch1) {
    auto reps = filter_batch({SmallEis(1, 0)}, 4);
    expect_roots_of_batch(reps, 1);
    std::vector<Key> want;
    for (const auto& r : reps) want.push_back(key_of(r));
    std::sort(want.begin(), want.end());
    auto got = constructed(1, false);
    std::sort(got.begin(), got.end());
    EXPECT_EQ(want.size(), 1053u);
    EXPECT_EQ(got, want);

    auto all = filter_batch(units(), 4);
    std::vector<Key> want_all;
    for (const auto& r : all) want_all.push_back(key_of(r));
    std::sort(want_all.begin(), want_all.end());
    auto got_all = constructed(1, true);
    std::sort(got_all.begin(), got_all.end());
    EXPECT_EQ(got_all.size(), 6u * 1053u);
    EXPECT_EQ(got_all, want_all);
}

TEST(ConstructionVsFilter, Batch2) {
    auto reps = filter_batch({SmallEis::theta()}, 6);
    std::vector<Key> want;
    for (const auto& r : reps) want.push_back(key_of(r));
    std::sort(want.begin(), want.end());
    auto got = constructed(2, false);
    std::sort(got.begin(), got.end());
    EXPECT_EQ(want.size(), 116532u);
    EXPECT_EQ(got, want);
    // spot-check the lattice conditions on a stride of the filter output
    std::vector<SmallRoot> stride;
    for (std::size_t k = 0; k < reps.size(); k += 37) stride.push_back(reps[k]);
    expect_roots_of_batch(stride, 2);
}

TEST(BatchCounts, FastBatches) {
    const std::uint64_t want[4] = {13, 1053, 116532, 743418};
    for (int b = 0; b < 4; ++b) EXPECT_EQ(BatchStream(b).count(), want[b]) << "batch " << b;
}

TEST(BatchCounts, PartitionsCoverTheBatchAndThreadsDoNotMatter) {
    for (int b = 0; b <= 3; ++b) {
        auto parts = partition_batch(b, 16);
        std::uint64_t total = 0;
        std::size_t expect_begin = 0;
        for (const auto& p : parts) {
            EXPECT_EQ(p.begin, expect_begin);
            expect_begin = p.end;
            total += BatchStream(b, p.begin, p.end).count();
        }
        EXPECT_EQ(expect_begin, batch_codewords(b).size());
        EXPECT_EQ(total, BatchStream(b).count());
    }
    ScanOptions one, three;
    three.threads = 3;
    EXPECT_EQ(count_batch(3, false, one), count_batch(3, false, three));
}

TEST(BatchParams, OutOfRangeBatchIsRejected) {
    EXPECT_THROW(batch_params(6), std::out_of_range);
    EXPECT_THROW(BatchStream(-1), std::out_of_range);
}
