// Randomized agreement with independent oracles. Every suite draws 10^4
// samples from a fixed seed and tolerates no discrepancy.

#include <gtest/gtest.h>

#include <random>

#include "mirrorcert/context.hpp"
#include "mirrorcert/enumerate.hpp"
#include "mirrorcert/hypgeom.hpp"

using namespace mirrorcert;

namespace {

constexpr int kSamples = 10000;

struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t seed) : g(seed) {}
    long uni(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }
    CycScalar eis(long r) { return CycScalar(EisInt(Int(uni(-r, r)), Int(uni(-r, r)))); }
    CycScalar field(long r) {  // a + b sqrt3 + (c + d sqrt3) w with rational parts
        auto q = [&] { return make_rat(uni(-r, r), uni(1, 4)); };
        CycScalar re(RealQuad(q(), q()));
        CycScalar im(RealQuad(q(), q()));
        return re + im * W();
    }
};

// ---------------------------------------------------------------------------
// origin_support against barycentric coordinates by Cramer's rule.
//
// A point a + b w is stored as (x, y) = (2a - b, b); the true plane
// coordinates are (x/2, y sqrt3/2), so cross products share one positive
// scale and dot products are x x' + 3 y y' up to a positive scale.

struct Pt {
    long x, y;
};

Pt to_pt(const SmallEis& z) { return {2 * z.a - z.b, z.b}; }
long cross(Pt p, Pt q) { return p.x * q.y - p.y * q.x; }
long dot(Pt p, Pt q) { return p.x * q.x + 3 * p.y * q.y; }
bool is_origin(Pt p) { return p.x == 0 && p.y == 0; }

// Is there a zero combination with every coefficient strictly positive?
bool strictly_positive_zero(const std::vector<Pt>& pts) {
    bool all_zero = true;
    for (auto p : pts) all_zero &= is_origin(p);
    if (all_zero) return true;
    if (pts.size() == 1) return false;
    Pt d{0, 0};
    for (auto p : pts)
        if (!is_origin(p)) d = p;
    bool through_origin = true;
    for (auto p : pts) through_origin &= cross(p, d) == 0;
    if (through_origin) {
        // all points on the line R d: need values of both signs
        bool neg = false, pos = false;
        for (auto p : pts) {
            long t = dot(p, d);
            neg |= t < 0;
            pos |= t > 0;
        }
        return neg && pos;
    }
    if (pts.size() == 2) return false;
    long det = cross({pts[1].x - pts[0].x, pts[1].y - pts[0].y}, {pts[2].x - pts[0].x, pts[2].y - pts[0].y});
    if (det == 0) return false;  // collinear on a line missing the origin
    long l0 = cross(pts[1], pts[2]), l1 = cross(pts[2], pts[0]), l2 = cross(pts[0], pts[1]);
    auto same = [&](long v) { return det > 0 ? v > 0 : v < 0; };
    return same(l0) && same(l1) && same(l2);
}

std::uint8_t hull_oracle_mask(const std::array<SmallEis, 3>& z) {
    std::uint8_t mask = 0;
    for (int sub = 1; sub < 8; ++sub) {
        std::vector<Pt> pts;
        for (int k = 0; k < 3; ++k)
            if (sub & (1 << k)) pts.push_back(to_pt(z[k]));
        if (strictly_positive_zero(pts)) mask |= static_cast<std::uint8_t>(sub);
    }
    return mask;
}

HitKind kind_of(std::uint8_t mask) {
    int bits = __builtin_popcount(mask);
    return bits == 0 ? HitKind::Miss : bits == 1 ? HitKind::AtVertex : bits == 2 ? HitKind::OnEdge : HitKind::Interior;
}

}  // namespace

TEST(OriginInTriangle, MatchesHullOracleOnIntegerPoints) {
    Rng rng(0x6f726967);
    int degenerate = 0;
    for (int n = 0; n < kSamples; ++n) {
        // Small coordinates make zeros, collinear and antipodal triples common.
        long r = n % 2 ? 2 : 6;
        std::array<SmallEis, 3> z;
        for (auto& e : z) e = SmallEis(rng.uni(-r, r), rng.uni(-r, r));
        if (n % 5 == 0) z[2] = SmallEis(-z[0].a * rng.uni(0, 2), -z[0].b * rng.uni(0, 2));
        std::uint8_t want = hull_oracle_mask(z);
        OriginHit got = origin_support(z[0], z[1], z[2]);
        ASSERT_EQ(got.mask, want) << "sample " << n;
        ASSERT_EQ(got.kind, kind_of(want));
        if (want != 0 && want != 7) ++degenerate;
    }
    EXPECT_GT(degenerate, 100);
}

TEST(OriginInTriangle, ExactFieldPredicateAgreesWithIntegerPredicate) {
    Rng rng(0x63796373);
    for (int n = 0; n < kSamples; ++n) {
        std::array<SmallEis, 3> z;
        for (auto& e : z) e = SmallEis(rng.uni(-3, 3), rng.uni(-3, 3));
        // A common positive real factor must not change the support.
        CycScalar scale(RealQuad(make_rat(rng.uni(1, 5), rng.uni(1, 5)), make_rat(rng.uni(0, 3), 1)));
        auto lift = [&](const SmallEis& e) { return scale * CycScalar(EisInt(Int(e.a), Int(e.b))); };
        OriginHit a = origin_support(z[0], z[1], z[2]);
        OriginHit b = origin_support(lift(z[0]), lift(z[1]), lift(z[2]));
        ASSERT_EQ(a, b);
        ASSERT_EQ(a.mask, hull_oracle_mask(z));
    }
}

// ---------------------------------------------------------------------------

TEST(SigmaForm, InnerProductFromSigmaDataMatchesDirect) {
    Rng rng(0x7369676d);
    auto draw = [&] {
        SigmaForm s;
        std::vector<CycScalar> c(13);
        for (auto& x : c) x = rng.uni(0, 2) ? rng.eis(2) : Q(0);
        s.sigma = lambda_vec(c);
        do s.m = rng.eis(2);
        while (s.m.is_zero());
        s.N = RealQuad(make_rat(rng.uni(-12, 12), rng.uni(1, 3)), make_rat(rng.uni(-2, 2), rng.uni(1, 2)));
        s.nu_coef = RealQuad(make_rat(rng.uni(-6, 6), rng.uni(1, 6)), make_rat(rng.uni(-3, 3), rng.uni(1, 3)));
        return s;
    };
    for (int n = 0; n < kSamples; ++n) {
        SigmaForm a = draw(), b = draw();
        HermVec va = reassemble(a), vb = reassemble(b);
        ASSERT_EQ(ip_via_sigma(a, b), inner(va, vb));
        if (n % 16 == 0) {
            SigmaForm back = sigma_decompose(va);
            ASSERT_EQ(back.sigma, a.sigma);
            ASSERT_EQ(back.m, a.m);
            ASSERT_EQ(back.N, norm(va));
            ASSERT_EQ(back.nu_coef, a.nu_coef);
        }
    }
}

// ---------------------------------------------------------------------------

namespace {

std::vector<HermVec> sample_roots_P() {
    std::vector<HermVec> out = NamedVectorsP::standard().roots26();
    for (int b = 0; b <= 2; ++b) {
        BatchStream s(b);
        SmallRoot r;
        for (int k = 0; s.next(r); ++k)
            if (k % 97 == 0) out.push_back(to_hermvec(r));
    }
    return out;
}

HermVec random_P(Rng& rng) {
    std::vector<CycScalar> c(14);
    for (auto& x : c) x = rng.field(3);
    return HermVec(form_P2F3(), c);
}

}  // namespace

TEST(FormPreservation, TriflectionsPreserveTheFormOnP2F3) {
    Rng rng(0x74726966);
    auto roots = sample_roots_P();
    ASSERT_GT(roots.size(), 1000u);
    for (int n = 0; n < kSamples; ++n) {
        const HermVec& s = roots[rng.uni(0, static_cast<long>(roots.size()) - 1)];
        HermVec x = random_P(rng), y = random_P(rng);
        CycScalar want = inner(x, y);
        ASSERT_EQ(inner(reflect_omega(s, x), reflect_omega(s, y)), want);
        ASSERT_EQ(inner(reflect_omega_inv(s, x), reflect_omega_inv(s, y)), want);
        ASSERT_EQ(reflect_omega_inv(s, reflect_omega(s, x)), x);
    }
}

TEST(FormPreservation, PointLineSwapPreservesTheForm) {
    Rng rng(0x73776170);
    const CMatrix F = isometry_F(NamedVectorsP::standard());
    for (int n = 0; n < kSamples; ++n) {
        HermVec x = random_P(rng), y = random_P(rng);
        ASSERT_EQ(inner(F.apply(x), F.apply(y)), inner(x, y));
    }
}

TEST(FormPreservation, LeechRootTriflectionsPreserveTheLeechForm) {
    Rng rng(0x6c656563);
    std::vector<HermVec> roots;
    while (roots.size() < 200) {
        HermVec sigma = HermVec::zero(form_Lambda());
        for (int i = 1; i <= 13; ++i)
            if (rng.uni(0, 3) == 0) sigma += rng.eis(1) * lam_P(i);
        for (int j = 1; j <= 13; ++j)
            if (rng.uni(0, 5) == 0) sigma += rng.eis(1) * lam_L(j);
        // theta * nu = t with t integral, or half-odd when 6 | sigma^2
        Int n2 = norm(sigma).a.get_num();
        bool six = mpz_divisible_ui_p(n2.get_mpz_t(), 6) != 0;
        CycScalar t = six ? Q(2 * rng.uni(-3, 3) + 1, 2) : Q(rng.uni(-3, 3));
        roots.push_back(leech_root(sigma, t / Th()));
    }
    auto random_leech = [&] {
        std::vector<CycScalar> c(13);
        for (auto& x : c) x = rng.field(2);
        return leech_vec(c, rng.field(2), rng.field(2));
    };
    const HermVec rho = leech_rho();
    for (int n = 0; n < kSamples; ++n) {
        const HermVec& s = roots[rng.uni(0, static_cast<long>(roots.size()) - 1)];
        ASSERT_TRUE(is_leech_root(s, rho));
        HermVec x = random_leech(), y = random_leech();
        ASSERT_EQ(inner(reflect_omega(s, x), reflect_omega(s, y)), inner(x, y));
    }
}
