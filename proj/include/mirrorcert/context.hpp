#pragma once
// Shared inputs of the checks: the named vectors of both models, the
// lambda_6 / lambda_9 witnesses, lazily built CVP engines, and run options.

#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "mirrorcert/enumerate.hpp"
#include "mirrorcert/report.hpp"

namespace mirrorcert {

struct RunOptions {
    Tier tier = Tier::Fast;
    unsigned threads = 1;
    std::optional<std::string> cache_dir;
    bool resume = false;
};

// LLL on the 24-dimensional real basis takes a fraction of a second; both
// engines are built once and shared read-only.
class LatticeEngines {
public:
    const CvpEngine& lambda() const {
        std::call_once(f1_, [&] { e1_ = std::make_unique<CvpEngine>(build_zbasis()); });
        return *e1_;
    }
    // (1/theta) Lambda
    const CvpEngine& lambda_over_theta() const {
        std::call_once(f2_, [&] {
            std::vector<HermVec> b;
            for (const auto& v : lambda().zbasis().ebasis) b.push_back(v / Th());
            e2_ = std::make_unique<CvpEngine>(make_zbasis(b));
        });
        return *e2_;
    }

private:
    mutable std::once_flag f1_, f2_;
    mutable std::unique_ptr<CvpEngine> e1_, e2_;
};

struct Context {
    NamedVectorsP P = NamedVectorsP::standard();
    NamedVectorsLeech Lm = NamedVectorsLeech::standard();
    HermVec lambda6 = default_lambda6();  // any norm-6 vector of Lambda
    HermVec lambda9 = default_lambda9();  // any norm-9 vector of Lambda
    std::shared_ptr<const LatticeEngines> engines = std::make_shared<LatticeEngines>();
};

inline const Context& default_context() {
    static const Context c;
    return c;
}

inline bool is_leech_root(const HermVec& s, const HermVec& rho) {
    return norm(s) == RealQuad(3) && inner(rho, s) == Th();
}

inline std::string idx_label(const std::string& a, int i, const std::string& b = "", int j = 0) {
    std::string s = a + std::to_string(i);
    if (!b.empty()) s += b + std::to_string(j);
    return s;
}

}  // namespace mirrorcert
