#pragma once
// Exact surrogates for complex hyperbolic distances and heights, and the
// origin-in-triangle predicates that decide whether a mirror meets a
// totally real triangle.

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mirrorcert/hermitian.hpp"

namespace mirrorcert {

// -|<v,rho>|^2 / v^2
inline RealQuad height(const HermVec& v, const HermVec& rho) {
    if (!norm(rho).is_zero()) throw std::domain_error("height needs a null cusp vector");
    RealQuad n = norm(v);
    if (sign_realquad(n) >= 0) throw std::domain_error("height needs a negative-norm vector");
    return -inner(v, rho).abs2() / n;
}

// cosh^2 d(v, w) = |<v,w>|^2 / (v^2 w^2)
inline RealQuad cosh2(const HermVec& v, const HermVec& w) {
    RealQuad nv = norm(v), nw = norm(w);
    if (sign_realquad(nv) >= 0 || sign_realquad(nw) >= 0) throw std::domain_error("cosh2 needs negative-norm vectors");
    return inner(v, w).abs2() / (nv * nw);
}

// sinh^2 d(v, s-perp) = -|<v,s>|^2 / (v^2 s^2)
inline RealQuad sinh2_to_mirror(const HermVec& v, const HermVec& s) {
    RealQuad nv = norm(v), ns = norm(s);
    if (sign_realquad(nv) >= 0 || sign_realquad(ns) <= 0) throw std::domain_error("sinh2 needs v^2 < 0 < s^2");
    return -inner(v, s).abs2() / (nv * ns);
}

// ---------------------------------------------------------------------------

struct RealTriangle {
    std::array<HermVec, 3> v;
};

inline bool real_nonpositive(const CycScalar& z) { return z.is_real() && sign_realquad(z.real_value()) <= 0; }

// Rescales v2, v3 so all pairwise inner products are real and <= 0.
inline RealTriangle make_real_triangle(const HermVec& a, HermVec b, HermVec c) {
    CycScalar ab = inner(a, b);
    if (!ab.is_zero()) b = (-ab) * b;
    CycScalar ac = inner(a, c);
    if (!ac.is_zero()) {
        c = (-ac) * c;
    } else {
        CycScalar bc = inner(b, c);
        if (!bc.is_zero()) c = (-bc) * c;
    }
    if (ab.is_zero() && !ac.is_zero()) {
        CycScalar cb = inner(c, b);
        if (!cb.is_zero()) b = (-cb) * b;
    }
    if (!real_nonpositive(inner(a, b)) || !real_nonpositive(inner(a, c)) || !real_nonpositive(inner(b, c)))
        throw std::domain_error("triangle is not totally real");
    return RealTriangle{{a, b, c}};
}

// ---------------------------------------------------------------------------
// Planar predicates. A triangle image is three points z_k in C; the preimage
// of 0 under the affine map from the triangle is described by its support:
// the set of vertices carrying positive weight in some zero combination.

enum class HitKind { Miss, AtVertex, OnEdge, Interior };

struct OriginHit {
    HitKind kind = HitKind::Miss;
    std::uint8_t mask = 0;  // bit k set: vertex k (0-based) is in the support

    bool miss() const { return kind == HitKind::Miss; }
    friend bool operator==(const OriginHit& a, const OriginHit& b) { return a.kind == b.kind && a.mask == b.mask; }
};

inline std::string describe(const OriginHit& h) {
    std::string s;
    switch (h.kind) {
        case HitKind::Miss: return "Miss";
        case HitKind::AtVertex: s = "AtVertex("; break;
        case HitKind::OnEdge: s = "OnEdge("; break;
        case HitKind::Interior: return "Interior";
    }
    bool first = true;
    for (int k = 0; k < 3; ++k)
        if (h.mask & (1u << k)) {
            if (!first) s += ",";
            s += std::to_string(k + 1);
            first = false;
        }
    return s + ")";
}

template <class P>
struct PlanarOps;

template <>
struct PlanarOps<CycScalar> {
    static bool is_zero(const CycScalar& z) { return z.is_zero(); }
    static int cross_sign(const CycScalar& p, const CycScalar& q) {
        return sign_realquad(p.re() * q.im() - q.re() * p.im());
    }
    static int dot_sign(const CycScalar& p, const CycScalar& q) {
        return sign_realquad(p.re() * q.re() + p.im() * q.im());
    }
};

// a + b w with integer a, b; (1, w) is a positively oriented real basis.
template <>
struct PlanarOps<SmallEis> {
    static bool is_zero(const SmallEis& z) { return z.a == 0 && z.b == 0; }
    static int cross_sign(const SmallEis& p, const SmallEis& q) {
        __int128 c = static_cast<__int128>(p.a) * q.b - static_cast<__int128>(q.a) * p.b;
        return (c > 0) - (c < 0);
    }
    static int dot_sign(const SmallEis& p, const SmallEis& q) {
        __int128 d = 2 * static_cast<__int128>(p.a) * q.a + 2 * static_cast<__int128>(p.b) * q.b -
                     static_cast<__int128>(p.a) * q.b - static_cast<__int128>(q.a) * p.b;
        return (d > 0) - (d < 0);
    }
};

template <class P>
OriginHit origin_support(const P& z0, const P& z1, const P& z2) {
    using Ops = PlanarOps<P>;
    const P* z[3] = {&z0, &z1, &z2};
    bool zero[3];
    int nz = 0;
    std::uint8_t mask = 0;
    for (int k = 0; k < 3; ++k) {
        zero[k] = Ops::is_zero(*z[k]);
        if (zero[k]) {
            mask |= static_cast<std::uint8_t>(1u << k);
            ++nz;
        }
    }
    int cr[3][3] = {};
    bool opposite[3][3] = {};
    for (int k = 0; k < 3; ++k)
        for (int l = k + 1; l < 3; ++l) {
            if (zero[k] || zero[l]) continue;
            cr[k][l] = Ops::cross_sign(*z[k], *z[l]);
            cr[l][k] = -cr[k][l];
            opposite[k][l] = opposite[l][k] = cr[k][l] == 0 && Ops::dot_sign(*z[k], *z[l]) < 0;
            if (opposite[k][l]) mask |= static_cast<std::uint8_t>((1u << k) | (1u << l));
        }
    bool full = false;
    if (nz == 3) {
        full = true;
    } else if (nz == 1) {
        int idx[2], m = 0;
        for (int k = 0; k < 3; ++k)
            if (!zero[k]) idx[m++] = k;
        full = opposite[idx[0]][idx[1]];
    } else if (nz == 0) {
        int o1 = cr[0][1], o2 = cr[1][2], o3 = cr[2][0];
        if (o1 == 0 && o2 == 0 && o3 == 0) {
            full = opposite[0][1] || opposite[1][2] || opposite[0][2];
        } else {
            full = o1 != 0 && o1 == o2 && o2 == o3;
        }
    }
    if (full) mask = 7;
    OriginHit h;
    h.mask = mask;
    int bits = (mask & 1) + ((mask >> 1) & 1) + ((mask >> 2) & 1);
    h.kind = bits == 0 ? HitKind::Miss : bits == 1 ? HitKind::AtVertex : bits == 2 ? HitKind::OnEdge : HitKind::Interior;
    return h;
}

struct TriangleImage {
    std::array<CycScalar, 3> z;
};

inline TriangleImage triangle_image(const RealTriangle& t, const HermVec& s) {
    return TriangleImage{{inner(t.v[0], s), inner(t.v[1], s), inner(t.v[2], s)}};
}

inline OriginHit origin_in_triangle(const TriangleImage& img) { return origin_support(img.z[0], img.z[1], img.z[2]); }

// ---------------------------------------------------------------------------
// Families z_k(n) = base_k + n step_k.

namespace detail {

// Rational enclosure [lo, hi] of sqrt3, refined until x = a + b sqrt3 is
// bounded away from zero; returns a rational lower bound of |x|.
inline Rat abs_lower_bound(const RealQuad& x) {
    if (x.is_zero()) throw std::domain_error("zero has no positive lower bound");
    Rat lo(17, 10), hi(7, 4);
    for (;;) {
        Rat e1 = x.a + x.b * lo, e2 = x.a + x.b * hi;
        if (sgn(e1) == sgn(e2) && sgn(e1) != 0) {
            Rat a1 = abs(e1), a2 = abs(e2);
            return a1 < a2 ? a1 : a2;
        }
        Rat mid = (lo + hi) / 2;
        if (mid * mid < 3) lo = mid;
        else hi = mid;
    }
}

inline Rat abs_upper_bound(const RealQuad& x) { return abs(x.a) + abs(x.b) * Rat(7, 4); }

// Cauchy bound on real roots of sum c_i n^i (c non-empty, not all zero).
inline Rat root_bound(const std::vector<RealQuad>& c) {
    int d = static_cast<int>(c.size()) - 1;
    while (d >= 0 && c[d].is_zero()) --d;
    if (d <= 0) return Rat(0);
    Rat lead = abs_lower_bound(c[d]);
    Rat m(0);
    for (int i = 0; i < d; ++i) {
        Rat r = abs_upper_bound(c[i]) / lead;
        if (r > m) m = r;
    }
    return m + 1;
}

}  // namespace detail

struct FamilyResult {
    std::map<long, OriginHit> hits;
    long bound = 0;          // every |n| > bound is certified Miss unless flagged below
    bool unbounded_pos = false;
    bool unbounded_neg = false;
};

inline FamilyResult origin_in_triangle_family(const TriangleImage& base, const TriangleImage& step) {
    // Signs of x_k(n), y_k(n) (linear) and of cross/dot products (quadratic)
    // are constant for |n| beyond the largest root bound.
    std::vector<std::vector<RealQuad>> polys;
    for (int k = 0; k < 3; ++k) {
        polys.push_back({base.z[k].re(), step.z[k].re()});
        polys.push_back({base.z[k].im(), step.z[k].im()});
    }
    for (int k = 0; k < 3; ++k)
        for (int l = k + 1; l < 3; ++l) {
            const RealQuad a = base.z[k].re(), b = step.z[k].re(), c = base.z[k].im(), d = step.z[k].im();
            const RealQuad e = base.z[l].re(), f = step.z[l].re(), g = base.z[l].im(), h = step.z[l].im();
            // (a+bn)(g+hn) - (e+fn)(c+dn)
            polys.push_back({a * g - e * c, a * h + b * g - e * d - f * c, b * h - f * d});
            // (a+bn)(e+fn) + (c+dn)(g+hn)
            polys.push_back({a * e + c * g, a * f + b * e + c * h + d * g, b * f + d * h});
        }
    Rat B(0);
    for (const auto& p : polys) {
        Rat r = detail::root_bound(p);
        if (r > B) B = r;
    }
    Int Bi;
    mpz_cdiv_q(Bi.get_mpz_t(), B.get_num_mpz_t(), B.get_den_mpz_t());
    FamilyResult res;
    res.bound = Bi.get_si() + 1;
    auto at = [&](long n) {
        TriangleImage t;
        for (int k = 0; k < 3; ++k) t.z[k] = base.z[k] + Q(n) * step.z[k];
        return origin_in_triangle(t);
    };
    for (long n = -res.bound; n <= res.bound; ++n) {
        OriginHit h = at(n);
        if (!h.miss()) res.hits[n] = h;
    }
    res.unbounded_pos = !at(res.bound).miss();
    res.unbounded_neg = !at(-res.bound).miss();
    return res;
}

// ---------------------------------------------------------------------------

constexpr int kHigherShell = 4;
constexpr int kHigherBatch = 6;

inline int shell_of(const HermVec& s, const HermVec& rho) {
    if (!norm(rho).is_zero()) throw std::domain_error("shell needs a null cusp vector");
    RealQuad v = inner(rho, s).abs2();
    if (v.is_zero()) throw std::domain_error("mirror through cusp impossible");
    if (v == RealQuad(3)) return 1;
    if (v == RealQuad(9)) return 2;
    if (v == RealQuad(12)) return 3;
    return kHigherShell;
}

// |<p_inf, s>|^2 / 3 in {0, 1, 3, 4, 7, 9} gives batches 0..5.
inline int batch_of(const HermVec& s, const HermVec& p_inf) {
    RealQuad v = inner(p_inf, s).abs2();
    static const long table[6] = {0, 3, 9, 12, 21, 27};
    for (int b = 0; b < 6; ++b)
        if (v == RealQuad(table[b])) return b;
    return kHigherBatch;
}

// ---------------------------------------------------------------------------
// u + v sqrt(D) with u, v in Q(w, sqrt3) and a fixed positive rational D.

struct ExtScalar {
    CycScalar u, v;
    Rat D;

    ExtScalar(CycScalar u_, CycScalar v_, Rat d) : u(std::move(u_)), v(std::move(v_)), D(std::move(d)) {}

    friend ExtScalar operator+(const ExtScalar& x, const ExtScalar& y) { return {x.u + y.u, x.v + y.v, x.D}; }
    friend ExtScalar operator-(const ExtScalar& x, const ExtScalar& y) { return {x.u - y.u, x.v - y.v, x.D}; }
    friend ExtScalar operator*(const ExtScalar& x, const ExtScalar& y) {
        return {x.u * y.u + CycScalar(x.D) * x.v * y.v, x.u * y.v + x.v * y.u, x.D};
    }
    ExtScalar conj() const { return {u.conj(), v.conj(), D}; }
    bool is_real() const { return u.is_real() && v.is_real(); }
    friend bool operator==(const ExtScalar& x, const ExtScalar& y) { return x.u == y.u && x.v == y.v && x.D == y.D; }
};

inline ExtScalar ext(const CycScalar& u, const Rat& D) { return {u, Q(0), D}; }

// Exact sign of a real u + v sqrt(D).
inline int sign_ext(const ExtScalar& x) {
    if (!x.is_real()) throw std::domain_error("sign of a non-real value");
    int su = sign_realquad(x.u.real_value()), sv = sign_realquad(x.v.real_value());
    if (su == sv) return su;
    if (su == 0) return sv;
    if (sv == 0) return su;
    RealQuad d = x.u.real_value() * x.u.real_value() - RealQuad(x.D) * x.v.real_value() * x.v.real_value();
    return su * sign_realquad(d);
}

// Inner products of v + c w for a real extension scalar c, from the Gram data.
inline ExtScalar ext_inner_combo(const HermVec& v, const ExtScalar& c, const HermVec& w, const HermVec& u) {
    // <v + c w, u>
    return ext(inner(v, u), c.D) + c * ext(inner(w, u), c.D);
}

inline ExtScalar ext_norm_combo(const HermVec& v, const ExtScalar& c, const HermVec& w) {
    ExtScalar vv = ext(inner(v, v), c.D), vw = ext(inner(v, w), c.D), wv = ext(inner(w, v), c.D),
              ww = ext(inner(w, w), c.D);
    return vv + c * (vw + wv) + c * c * ww;
}

}  // namespace mirrorcert
