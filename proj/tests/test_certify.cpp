#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "mirrorcert/certify.hpp"

using namespace mirrorcert;

namespace {

const char* const kIds[] = {
    "gram-constants", "dual-and-det",    "model-isometry", "ordered-pairs", "config-roots",  "translations",
    "thm130-set",     "sequences",       "d4-basepoints",  "center-lemma",  "near-theta",    "triangle-a1",
    "triangle-a2",    "mirrors-near-tau", "step1-triangles", "step4-point", "step4-line",    "complex-triangles",
};

bool has_failure_witness(const CheckReport& r, const std::string& label) {
    for (const auto& w : r.witnesses)
        if (w.label == label && w.value.find("!=") != std::string::npos) return true;
    return false;
}

// Runs the fast checks in order and returns the id of the first one that
// fails an assertion; checks that error out do not count.
std::string first_failure(const Context& ctx) {
    RunOptions o;
    for (const auto& d : registry()) {
        CheckReport r = run_check(d, o, ctx);
        if (r.status == Status::Fail) return d.id;
    }
    return "";
}

}  // namespace

TEST(Registry, ExactlyTheKnownChecksInOrder) {
    const auto& reg = registry();
    ASSERT_EQ(reg.size(), std::size(kIds));
    std::set<std::string> anchors;
    for (std::size_t k = 0; k < reg.size(); ++k) {
        EXPECT_EQ(reg[k].id, kIds[k]);
        EXPECT_FALSE(reg[k].anchor.empty());
        EXPECT_TRUE(anchors.insert(reg[k].anchor).second) << "duplicate anchor " << reg[k].anchor;
        EXPECT_NE(reg[k].fn, nullptr);
        EXPECT_EQ(&find_check(reg[k].id), &reg[k]);
    }
    EXPECT_THROW(find_check("no-such-check"), UnknownCheck);
}

TEST(Registry, OnlyStep4LineHasALongPortion) {
    for (const auto& d : registry()) {
        EXPECT_EQ(d.tier, Tier::Fast);
        EXPECT_EQ(d.long_portion, d.id == "step4-line");
    }
}

TEST(Checks, NearThetaCounts) {
    CheckReport r = run_check("near-theta", RunOptions{});
    ASSERT_TRUE(r.passed()) << render_text(r);
    EXPECT_EQ(r.counts.at("neighbors6"), 3);
    EXPECT_EQ(r.counts.at("neighbors9"), 36);
}

TEST(Checks, TriangleA2PipelineCounts) {
    CheckReport r = run_check("triangle-a2", RunOptions{});
    ASSERT_TRUE(r.passed()) << render_text(r);
    EXPECT_EQ(r.counts.at("Sxy"), 937);
    EXPECT_EQ(r.counts.at("Sqxy"), 2811);
    EXPECT_EQ(r.counts.at("meet"), 460);
    EXPECT_EQ(r.counts.at("cs_reject"), 449);
    EXPECT_EQ(r.counts.at("survivors"), 4);
}

TEST(Checks, Step4LineFastTierSkipsBatches4And5) {
    CheckReport r = run_check("step4-line", RunOptions{});
    ASSERT_TRUE(r.passed()) << render_text(r);
    EXPECT_EQ(r.counts.at("batch3"), 743418);
    EXPECT_EQ(r.counts.count("batch4"), 0u);
    bool noted = false;
    for (const auto& n : r.notes) noted |= n.find("batches 4-5 skipped") != std::string::npos;
    EXPECT_TRUE(noted);
}

TEST(Checks, CorruptedTauFailsGramConstants) {
    Context ctx = default_context();
    ctx.P.tau[0] += Q(1);
    CheckReport r = run_check("gram-constants", RunOptions{}, ctx);
    EXPECT_EQ(r.status, Status::Fail);
    EXPECT_TRUE(has_failure_witness(r, "<tau,tau>")) << render_text(r);
}

TEST(Checks, ExceptionsBecomeErrorReports) {
    Context ctx = default_context();
    ctx.P.rho = HermVec::zero(form_plain(3));  // wrong dimension for every use
    CheckReport r = run_check("gram-constants", RunOptions{}, ctx);
    EXPECT_EQ(r.status, Status::Error);
    ASSERT_FALSE(r.witnesses.empty());
}

// Every named constant is load-bearing: perturbing it breaks some fast check.
TEST(NegativePath, MutatingAnyNamedConstantFailsAFastCheck) {
    struct Mutation {
        std::string name;
        std::function<void(Context&)> apply;
    };
    std::vector<Mutation> ms;
    auto bump = [](HermVec& v) { v[1] += Q(1); };
    for (int i = 1; i <= 13; ++i) {
        ms.push_back({"P.p" + std::to_string(i), [=](Context& c) { bump(c.P.p(i)); }});
        ms.push_back({"P.l" + std::to_string(i), [=](Context& c) { bump(c.P.l(i)); }});
        ms.push_back({"Lm.p" + std::to_string(i), [=](Context& c) { bump(c.Lm.p(i)); }});
        ms.push_back({"Lm.l" + std::to_string(i), [=](Context& c) { bump(c.Lm.l(i)); }});
    }
    ms.push_back({"P.p_inf", [=](Context& c) { bump(c.P.p_inf); }});
    ms.push_back({"P.l_inf", [=](Context& c) { bump(c.P.l_inf); }});
    ms.push_back({"P.tau", [=](Context& c) { bump(c.P.tau); }});
    ms.push_back({"P.rho", [=](Context& c) { bump(c.P.rho); }});
    ms.push_back({"Lm.p_inf", [=](Context& c) { bump(c.Lm.p_inf); }});
    ms.push_back({"Lm.l_inf", [=](Context& c) { bump(c.Lm.l_inf); }});
    ms.push_back({"Lm.rho", [=](Context& c) { bump(c.Lm.rho); }});
    ms.push_back({"lambda6", [=](Context& c) { bump(c.lambda6); }});
    ms.push_back({"lambda9", [=](Context& c) { bump(c.lambda9); }});
    for (const auto& m : ms) {
        Context ctx = default_context();
        m.apply(ctx);
        EXPECT_NE(first_failure(ctx), "") << "mutation of " << m.name << " went unnoticed";
    }
}

TEST(Determinism, ScanningChecksAgreeAcrossThreadCounts) {
    for (const char* id : {"mirrors-near-tau", "step1-triangles", "step4-point", "step4-line"}) {
        RunOptions one, four;
        four.threads = 4;
        auto a = run_check(id, one), b = run_check(id, four);
        EXPECT_EQ(to_json(a, false).dump(), to_json(b, false).dump()) << id;
    }
}
