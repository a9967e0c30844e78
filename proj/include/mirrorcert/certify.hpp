#pragma once
// The check registry. Each check certifies one finite claim exactly and
// reports pass/fail with witnesses. Checks run one after another in
// registry order; parallelism lives inside the batch scans only, so
// reports do not depend on the thread count.

#include <chrono>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mirrorcert/checks_algebra.hpp"
#include "mirrorcert/checks_geometry.hpp"

namespace mirrorcert {

using CheckFn = void (*)(const Context&, const RunOptions&, Recorder&);

struct CheckDescriptor {
    std::string id;
    Tier tier;           // lowest tier at which the check runs
    bool long_portion;   // does more work when the long tier is selected
    std::string anchor;  // the claim being certified
    CheckFn fn;
};

class UnknownCheck : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline const std::vector<CheckDescriptor>& registry() {
    static const std::vector<CheckDescriptor> r = {
        {"gram-constants", Tier::Fast, false, "inner products of the named vectors of L",
         checks::gram_constants},
        {"dual-and-det", Tier::Fast, false, "det L = -3^7, det Lambda = 3^6, both theta times their duals",
         checks::dual_and_det},
        {"model-isometry", Tier::Fast, false, "the two coordinate models of L are isometric on the named family",
         checks::model_isometry_check},
        {"ordered-pairs", Tier::Fast, false, "representative pairs of Leech roots with prescribed inner products",
         checks::ordered_pairs},
        {"config-roots", Tier::Fast, false, "root configurations spanned by two Leech roots",
         checks::config_roots},
        {"translations", Tier::Fast, false, "Heisenberg translation identities and triflection products",
         checks::translations},
        {"thm130-set", Tier::Fast, false, "the 130 Leech roots and the lattice they span",
         checks::leech_roots_130},
        {"sequences", Tier::Fast, false, "two explicit chains of Leech roots ending at p_1 - rho and wbar p_1 - l_1 - rho",
         checks::sequences},
        {"d4-basepoints", Tier::Fast, false, "basepoint moves in the D4 arrangement", checks::d4_basepoints},
        {"center-lemma", Tier::Fast, false, "lattice points of Lambda and (1/theta)Lambda nearest the centroid C",
         checks::nearest_to_center},
        {"near-theta", Tier::Fast, false, "lattice points of Lambda nearest lambda_6/theta and lambda_9/theta",
         checks::near_theta},
        {"triangle-a1", Tier::Fast, false, "mirrors meeting the triangle rho p q for two Leech roots at theta",
         checks::triangle_a1},
        {"triangle-a2", Tier::Fast, false, "mirrors meeting the triangles rho q X, rho q Y, rho q Z",
         checks::triangle_a2},
        {"mirrors-near-tau", Tier::Fast, false, "the mirrors nearest the 26-point tau", checks::mirrors_near_tau},
        {"step1-triangles", Tier::Fast, false, "mirrors meeting tau x p_inf and its line-case image",
         checks::step1_triangles},
        {"step4-point", Tier::Fast, false, "mirrors meeting rho x p_inf for a point-mirror", checks::step4_point},
        {"step4-line", Tier::Fast, true, "mirrors meeting rho x l_inf for a line-mirror; batches 4-5 at tier long",
         checks::step4_line},
        {"complex-triangles", Tier::Fast, false, "mirrors meeting the complex triangles rho tau p_inf and rho tau l_inf",
         checks::complex_triangles},
    };
    return r;
}

inline const CheckDescriptor& find_check(std::string_view id) {
    for (const auto& d : registry())
        if (d.id == id) return d;
    throw UnknownCheck("unknown check id: " + std::string(id));
}

// CacheCorrupt propagates; every other exception becomes an error report.
inline CheckReport run_check(const CheckDescriptor& d, const RunOptions& opt, const Context& ctx = default_context()) {
    CheckReport rep;
    rep.id = d.id;
    if (d.tier == Tier::Long && opt.tier != Tier::Long) {
        rep.status = Status::Error;
        rep.witnesses.push_back({"tier", "check requires tier long"});
        return rep;
    }
    Recorder rec(rep);
    auto t0 = std::chrono::steady_clock::now();
    try {
        d.fn(ctx, opt, rec);
    } catch (const CacheCorrupt&) {
        throw;
    } catch (const std::exception& e) {
        rep.status = Status::Error;
        rep.witnesses.push_back({"exception", e.what()});
    }
    rep.duration_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline CheckReport run_check(std::string_view id, const RunOptions& opt, const Context& ctx = default_context()) {
    return run_check(find_check(id), opt, ctx);
}

inline std::vector<CheckReport> run_all(const RunOptions& opt, const Context& ctx = default_context()) {
    std::vector<CheckReport> out;
    for (const auto& d : registry())
        if (d.tier == Tier::Fast || opt.tier == Tier::Long) out.push_back(run_check(d, opt, ctx));
    return out;
}

inline bool all_passed(const std::vector<CheckReport>& rs) {
    for (const auto& r : rs)
        if (!r.passed()) return false;
    return true;
}

}  // namespace mirrorcert
