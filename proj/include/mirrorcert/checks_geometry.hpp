#pragma once
// Checks on how particular points and triangles meet the mirror arrangement:
// nearest lattice points, the totally real triangles in both models of L,
// the batch scans around p_inf, and the complex triangle in the 1-ball
// fixed by the collineation group.

#include <algorithm>
#include <array>
#include <set>
#include <string>
#include <vector>

#include "mirrorcert/checks_algebra.hpp"
#include "mirrorcert/scan.hpp"

namespace mirrorcert::checks {

namespace detail {

inline HermVec lam_zero() { return HermVec::zero(form_Lambda()); }

inline bool same_set(const std::vector<HermVec>& a, const std::vector<HermVec>& b) {
    if (a.size() != b.size()) return false;
    for (const auto& v : a)
        if (!contains(b, v)) return false;
    for (const auto& v : b)
        if (!contains(a, v)) return false;
    return true;
}

inline std::vector<HermVec> hit_points(const std::vector<CvpHit>& hits) {
    std::vector<HermVec> v;
    for (const auto& h : hits) v.push_back(h.v);
    return v;
}

// Lattice points strictly closer than bound, and whether they all sit at exactly at.
struct Neighbors {
    std::vector<HermVec> points;
    bool all_at = true;
};

inline Neighbors neighbors_within(const CvpEngine& e, const HermVec& target, const Rat& bound, const Rat& at) {
    Neighbors n;
    for (const auto& h : e.enumerate(target, bound)) {
        if (h.dist2 >= bound) continue;
        n.points.push_back(h.v);
        n.all_at = n.all_at && h.dist2 == at;
    }
    return n;
}

// For real t: -(u + t v)^2 and |<u + t v, rho>|^2 as polynomials in t.
struct EdgePolys {
    std::array<RealQuad, 3> neg_norm, rho2;
};

inline EdgePolys edge_polys(const HermVec& u, const HermVec& v, const HermVec& rho) {
    CycScalar a = inner(u, rho), b = inner(v, rho);
    EdgePolys e;
    e.neg_norm = {-norm(u), -(inner(u, v).re() * RealQuad(2)), -norm(v)};
    e.rho2 = {a.abs2(), (a * b.conj()).re() * RealQuad(2), b.abs2()};
    return e;
}

inline std::array<RealQuad, 3> lin(const std::array<RealQuad, 3>& p, long cp, const std::array<RealQuad, 3>& q,
                                   long cq) {
    return {p[0] * RealQuad(cp) + q[0] * RealQuad(cq), p[1] * RealQuad(cp) + q[1] * RealQuad(cq),
            p[2] * RealQuad(cp) + q[2] * RealQuad(cq)};
}

inline std::string render3(const std::array<RealQuad, 3>& p) {
    return "(" + render(p[0]) + ", " + render(p[1]) + ", " + render(p[2]) + ")";
}

// theta nu is an integer, or a half-odd integer when 6 | sigma^2.
inline CycScalar base_nu(const HermVec& sigma) {
    Int n = norm(sigma).a.get_num();
    bool six = mpz_divisible_ui_p(n.get_mpz_t(), 6) != 0;
    return (six ? Q(1, 2) : Q(0)) / Th();
}

// Leech roots (m = 1) with sigma near C, lambda_6/theta and lambda_9/theta,
// for spot-checking closed-form inner products.
inline std::vector<HermVec> leech_samples(const Context& c) {
    std::vector<HermVec> sig;
    for (const auto& h : c.engines->lambda().enumerate(lam_C(), Rat(42, 13))) sig.push_back(h.v);
    for (const auto& h : c.engines->lambda().enumerate(c.lambda6 / Th(), Rat(2))) sig.push_back(h.v);
    for (const auto& h : c.engines->lambda().enumerate(c.lambda9 / Th(), Rat(3))) sig.push_back(h.v);
    sig.push_back(c.lambda6);
    sig.push_back(c.lambda9);
    std::vector<HermVec> out;
    for (const auto& s : sig)
        for (long k = -1; k <= 1; ++k) out.push_back(leech_root(s, base_nu(s) + Q(k) / Th()));
    return out;
}

// Second-shell roots scaled to m = theta.
inline std::vector<HermVec> second_shell_samples(const Context& c) {
    std::vector<HermVec> out;
    for (int j = 1; j <= 13; ++j)
        for (long n = -1; n <= 1; ++n) out.push_back(Wb() * c.Lm.l(j) + (Q(n) * Th()) * c.Lm.rho);
    const HermVec x = leech_vec(lam_zero(), Q(1), -W());
    const HermVec y = leech_vec(c.lambda6, Q(1), W());
    HermVec w = W() * x - Wb() * y;
    out.push_back((Th() / w[13]) * w);
    HermVec y9 = Wb() * x - leech_vec(c.lambda9, Q(1), Th());
    out.push_back((Th() / y9[13]) * y9);
    return out;
}

inline RealQuad rq(long a, long b = 0) { return RealQuad(Rat(a), Rat(b)); }

// Real point where the segment z1 z2 crosses the real axis.
inline RealQuad real_crossing(const CycScalar& z1, const CycScalar& z2) {
    RealQuad y1 = z1.im(), y2 = z2.im();
    return (y2 * z1.re() - y1 * z2.re()) / (y2 - y1);
}

inline std::string hit_list(const FamilyResult& f) {
    std::string s;
    for (const auto& [n, h] : f.hits) {
        if (!s.empty()) s += " ";
        s += std::to_string(n) + ":" + describe(h);
    }
    return s.empty() ? "none" : s;
}

inline ScanOptions scan_options(const RunOptions& o) {
    ScanOptions s;
    s.threads = o.threads;
    s.cache_dir = o.cache_dir;
    s.resume = o.resume;
    return s;
}

inline SmallRoot small_root(const HermVec& v) {
    SmallRoot s;
    for (int k = 0; k < 14; ++k) {
        EisInt e = v[k].to_eis();
        s[k] = SmallEis(e.a.get_si(), e.b.get_si());
    }
    return s;
}

inline const OriginHit kEdge23{HitKind::OnEdge, 6};
inline const OriginHit kVertex3{HitKind::AtVertex, 4};

}  // namespace detail

// ---------------------------------------------------------------------------

inline void nearest_to_center(const Context& c, const RunOptions&, Recorder& r) {
    const HermVec C = lam_C();
    std::vector<HermVec> pts, lns;
    for (int i = 1; i <= 13; ++i) pts.push_back(C + lam_P(i) / Psi());
    for (int j = 1; j <= 13; ++j) lns.push_back(C - (Wb() / (Th() * Psi())) * lam_L(j));

    auto a = detail::neighbors_within(c.engines->lambda(), C, Rat(42, 13), Rat(36, 13));
    r.expect_count("Lambda_near_C", static_cast<std::int64_t>(a.points.size()), 13);
    r.expect(a.all_at, "Lambda points near C at distance^2 36/13");
    r.expect(detail::same_set(a.points, pts), "Lambda points near C are C + P_i/psi");

    auto b = detail::neighbors_within(c.engines->lambda_over_theta(), C, Rat(14, 13), Rat(12, 13));
    r.expect_count("Lambda_over_theta_near_C", static_cast<std::int64_t>(b.points.size()), 13);
    r.expect(b.all_at, "(1/theta)Lambda points near C at distance^2 12/13");
    r.expect(detail::same_set(b.points, lns), "(1/theta)Lambda points near C are C - wbar L_j/(theta psi)");

    for (int i = 1; i <= 13; ++i) {
        r.expect_eq(idx_label("P_", i, "^2"), CycScalar(norm(lam_P(i))), Q(36));
        r.expect_eq(idx_label("L_", i, "^2"), CycScalar(norm(lam_L(i))), Q(36));
        for (int j = 1; j <= 13; ++j) {
            if (j != i) r.expect_eq(idx_label("<P_", i, ",P_", j) + ">", inner(lam_P(i), lam_P(j)), Q(-3));
            r.expect_eq(idx_label("<P_", i, ",L_", j) + ">", inner(lam_P(i), lam_L(j)),
                        incident(i, j) ? Q(-9) * Th() : Q(4) * Th());
            // difference of the two neighbor sets: norm 3 if incident, else 4
            r.expect_eq(idx_label("|pt_", i, " - ln_", j) + "|^2", CycScalar(norm(pts[i - 1] - lns[j - 1])),
                        incident(i, j) ? Q(3) : Q(4));
        }
    }
    r.witness("C", render(C));
}

inline void near_theta(const Context& c, const RunOptions&, Recorder& r) {
    const HermVec t6 = c.lambda6 / Th(), t9 = c.lambda9 / Th();
    CvpStats s6, s9;
    auto h6 = c.engines->lambda().enumerate(t6, Rat(2), &s6);
    auto h9 = c.engines->lambda().enumerate(t9, Rat(3), &s9);
    r.expect_count("neighbors6", static_cast<std::int64_t>(h6.size()), 3);
    r.expect_count("neighbors9", static_cast<std::int64_t>(h9.size()), 36);
    for (const auto& h : h6) r.expect_eq("distance^2 to lambda_6/theta", h.dist2, Rat(2));
    for (const auto& h : h9) r.expect_eq("distance^2 to lambda_9/theta", h.dist2, Rat(3));
    auto p6 = detail::hit_points(h6), p9 = detail::hit_points(h9);
    r.expect(detail::contains(p6, detail::lam_zero()) && detail::contains(p9, detail::lam_zero()),
             "0 is among the nearest points");
    // nearest points are (x + lambda)/theta with x = -lambda mod theta of minimal norm
    for (const auto& v : p6) r.expect(member_Lambda(Th() * v - c.lambda6), "theta v - lambda_6 in theta Lambda", render(v));
    for (const auto& v : p9) r.expect(member_Lambda(Th() * v - c.lambda9), "theta v - lambda_9 in theta Lambda", render(v));
    r.count("cvp_nodes6", static_cast<std::int64_t>(s6.nodes));
    r.count("cvp_nodes9", static_cast<std::int64_t>(s9.nodes));
}

// Triangle rho p q in the Leech model, with p, q the projections of rho to
// x-perp and <x,y>-perp for Leech roots x, y with <x,y> = theta.
inline void triangle_a1(const Context& c, const RunOptions&, Recorder& r) {
    const HermVec& rho = c.Lm.rho;
    const HermVec zero = detail::lam_zero();
    const HermVec x = leech_vec(zero, Q(1), -W());
    const HermVec y = leech_vec(c.lambda6, Q(1), W());
    const HermVec z = -Wb() * x - W() * y;
    const HermVec w = W() * x - Wb() * y;
    const HermVec p = project_orthogonal(rho, x);
    const HermVec q = rho - w;

    r.expect_eq("p", p, leech_vec(zero, Q(1) / Th(), -Wb() / Th()));
    r.expect_eq("q", q, leech_vec(Wb() * c.lambda6, Thb(), Th() * Wb()));
    r.expect(inner(q, x).is_zero() && inner(q, y).is_zero(), "q is orthogonal to x and y");
    r.expect_eq("p^2", CycScalar(norm(p)), Q(-1));
    r.expect_eq("<rho,p>", inner(rho, p), Q(-1));
    r.expect_eq("q^2", CycScalar(norm(q)), Q(-3));
    r.expect_eq("<rho,q>", inner(rho, q), Q(-3));
    r.expect_eq("<p,q>", inner(p, q), Q(-3));
    SigmaForm sp = sigma_decompose(p), sq = sigma_decompose(q);
    r.expect(sp.sigma == zero && sp.m == Q(1) / Th() && sp.N == RealQuad(-1) && sp.nu() == -Th() * Q(1, 18),
             "sigma data of p");
    r.expect(sq.sigma == Wb() * c.lambda6 && sq.m == Thb() && sq.N == RealQuad(-3) && sq.nu() == -Th() * Q(1, 2),
             "sigma data of q");
    if (!r.ok()) return;

    // heights: rho p stays at height 1, p q rises from 1 to 3, rho q falls from 3
    r.expect_eq("ht(p)", height(p, rho), RealQuad(1));
    r.expect_eq("ht(q)", height(q, rho), RealQuad(3));
    auto pq = detail::edge_polys(p, q, rho);
    auto pq_up = detail::lin(pq.neg_norm, 3, pq.rho2, -1), pq_lo = detail::lin(pq.rho2, 1, pq.neg_norm, -1);
    r.expect(pq_up == std::array<RealQuad, 3>{detail::rq(2), detail::rq(12), detail::rq(0)},
             "edge pq: 3A - B = 2 + 12t", detail::render3(pq_up));
    r.expect(pq_lo == std::array<RealQuad, 3>{detail::rq(0), detail::rq(0), detail::rq(6)},
             "edge pq: B - A = 6t^2", detail::render3(pq_lo));
    auto qr = detail::edge_polys(q, rho, rho);
    r.expect(qr.neg_norm == std::array<RealQuad, 3>{detail::rq(3), detail::rq(6), detail::rq(0)} &&
                 qr.rho2 == std::array<RealQuad, 3>{detail::rq(9), detail::rq(0), detail::rq(0)},
             "edge q rho: ht = 9/(3 + 6t)");
    auto pr = detail::edge_polys(p, rho, rho);
    r.expect(pr.neg_norm == std::array<RealQuad, 3>{detail::rq(1), detail::rq(2), detail::rq(0)} &&
                 pr.rho2 == std::array<RealQuad, 3>{detail::rq(1), detail::rq(0), detail::rq(0)},
             "edge p rho: ht = 1/(1 + 2t)");
    r.note("the interior of T is below height 3 except at q by convexity of horoballs (cited, not recomputed)");

    RealTriangle T = make_real_triangle(rho, p, q);
    auto known = [&](const std::string& name, const HermVec& s, const OriginHit& want) {
        OriginHit h = origin_in_triangle(triangle_image(T, s));
        r.expect(h == want, name + " meets T as " + describe(want), describe(h));
    };
    known("x", x, detail::kEdge23);
    known("y", y, detail::kVertex3);
    known("z", z, detail::kVertex3);
    known("w x - wbar y", w, detail::kVertex3);

    // the one second-shell class of <x,y> is w x - wbar y, tangent at q
    auto cs = detail::census(x, y, rho);
    r.expect_count("shell2_classes_xy", cs.shell2 / 6, 1);
    r.expect(inner(q, w).is_zero(), "w x - wbar y is orthogonal to q");
    r.expect_eq("tangency height of w x - wbar y", inner(rho, w).abs2() / RealQuad(3), RealQuad(3));

    // closed forms for <p,s> and <q,s> on Leech roots
    const HermVec l6t = (Wb() / Th()) * c.lambda6;
    std::int64_t nsamp = 0;
    for (const auto& s : detail::leech_samples(c)) {
        SigmaForm f = sigma_decompose(s);
        CycScalar s2 = CycScalar(norm(f.sigma));
        CycScalar ps = Th() * Q(1, 6) * s2 + (Q(1, 2) - Th() * f.nu());
        CycScalar qs = Th() * Q(1, 2) * (CycScalar(norm(f.sigma + l6t)) - Q(2)) -
                       (Th() * imag_part(inner(f.sigma, l6t)) - Q(3, 2) + Q(3) * Th() * f.nu());
        r.expect_eq("<p,s> closed form", inner(p, s), ps);
        r.expect_eq("<q,s> closed form", inner(q, s), qs);
        ++nsamp;
    }
    r.count("closed_form_samples", nsamp);

    // sigma = 0: the Leech roots x + n rho; only n = 0 meets T
    FamilyResult fam = origin_in_triangle_family(triangle_image(T, x), triangle_image(T, rho));
    r.expect(fam.hits.size() == 1 && fam.hits.count(0) && fam.hits.at(0) == detail::kEdge23 && !fam.unbounded_pos &&
                 !fam.unbounded_neg,
             "sigma = 0 family meets T only at x", detail::hit_list(fam));

    // sigma != 0: <q,s> is real only for the nearest points of Lambda to -wbar lambda_6/theta
    auto hits = c.engines->lambda().enumerate(-l6t, Rat(2));
    r.expect_count("near_minus_wbar_lambda6_over_theta", static_cast<std::int64_t>(hits.size()), 3);
    std::vector<HermVec> found;
    for (const auto& h : hits) {
        r.expect_eq("distance^2 to -wbar lambda_6/theta", h.dist2, Rat(2));
        if (h.v == zero) continue;
        // <q,s> = 0 fixes nu
        HermVec s0 = leech_vec(h.v, Q(1), Th() * (CycScalar(norm(h.v)) - Q(3)) * Q(1, 6));
        CycScalar nu = inner(q, s0) / (Q(3) * Th());
        if (!r.expect(nu_admissible(h.v, nu), "nu forced by <q,s> = 0 is admissible", render(nu))) continue;
        HermVec s = leech_root(h.v, nu);
        r.expect(inner(q, s).is_zero(), "forced root is orthogonal to q", render(s));
        found.push_back(s);
    }
    r.expect(detail::same_set(found, {y, z}), "forced roots are y and z");
}

// Triangles rho q X, rho q Y, rho q Z in the Leech model.
inline void triangle_a2(const Context& c, const RunOptions&, Recorder& r) {
    const HermVec& rho = c.Lm.rho;
    const HermVec& l9 = c.lambda9;
    const HermVec x = leech_vec(detail::lam_zero(), Q(1), -W());
    const HermVec z = leech_vec(l9, Q(1), Th());
    const HermVec y = Wb() * x - z;
    const HermVec X = project_orthogonal(rho, x), Y = project_orthogonal(rho, y), Z = project_orthogonal(rho, z);
    const HermVec q = leech_vec((Q(2) * Wb() - W()) * l9, Q(3) * Thb(), Q(3) - Q(3) * W());

    r.expect_eq("y", y, leech_vec(-l9, Th() * W(), Q(2) * Wb()));
    r.expect_eq("<rho,y>", inner(rho, y), Q(3) * Wb());
    r.expect_eq("X", X, rho + x / Th());
    r.expect_eq("Y", Y, leech_vec(Wb() * l9, Thb(), Q(1) - Q(2) * W()));
    r.expect_eq("Z", Z, leech_vec(l9 / Th(), Q(1) / Th(), Q(2)));
    r.expect_eq("X^2", CycScalar(norm(X)), Q(-1));
    r.expect_eq("Z^2", CycScalar(norm(Z)), Q(-1));
    r.expect_eq("Y^2", CycScalar(norm(Y)), Q(-3));
    r.expect_eq("<rho,X>", inner(rho, X), Q(-1));
    r.expect_eq("<rho,Z>", inner(rho, Z), Q(-1));
    r.expect_eq("<rho,Y>", inner(rho, Y), Q(-3));
    r.expect_eq("<X,y>", inner(X, y), Q(1) + Q(3) * Wb());
    r.expect_eq("<Y,x>", inner(Y, x), -W() * Th());
    HermVec qf = (Q(2) * W() - Q(1)) * (rho - (inner(rho, x) / inner(Y, x)) * Y - (inner(rho, y) / inner(X, y)) * X);
    r.expect_eq("q from X and Y", qf, q);
    r.expect(inner(q, x).is_zero() && inner(q, y).is_zero(), "q is orthogonal to x and y");
    r.expect_eq("q^2", CycScalar(norm(q)), Q(-18));
    const std::pair<const char*, const HermVec*> tab[] = {{"rho", &rho}, {"X", &X}, {"Y", &Y}, {"Z", &Z}};
    for (const auto& [name, v] : tab) r.expect_eq(std::string("<q,") + name + ">", inner(q, *v), Q(-9));
    if (!r.ok()) return;

    // everything below the fourth critical height 7
    r.expect_eq("ht(X)", height(X, rho), RealQuad(1));
    r.expect_eq("ht(Z)", height(Z, rho), RealQuad(1));
    r.expect_eq("ht(Y)", height(Y, rho), RealQuad(3));
    r.expect_eq("ht(q)", height(q, rho), RealQuad(make_rat(9, 2)));
    r.expect_lt("ht(q) < 7", height(q, rho), RealQuad(7));
    r.expect_eq("ht(Y + rho)", height(Y + rho, rho), RealQuad(1));
    r.expect_eq("cosh^2 d(q,X)", cosh2(q, X), RealQuad(make_rat(9, 2)));
    r.expect_eq("cosh^2 d(q,Z)", cosh2(q, Z), RealQuad(make_rat(9, 2)));
    r.expect_eq("cosh^2 d(q,Y+rho)", cosh2(q, Y + rho), RealQuad(2));
    r.note("X, Z and Y + rho are the points of the triangles outside the first horoball farthest from q "
           "(planar convexity, cited, not recomputed)");

    // ball bound: sinh^2 d(q, s-perp) <= 9/2 - 1 with s^2 = 3
    const Rat q2 = norm(q).a;
    Rat ip_bound = -(Rat(9, 2) - 1) * q2 * 3;
    r.expect_eq("|<q,s>|^2 bound", ip_bound, Rat(189));
    Rat sq_min = -ip_bound / -q2;
    r.expect_eq("s_q^2 lower bound", sq_min, Rat(-21, 2));
    r.expect_eq("s_xy^2 upper bound", Rat(Rat(3) - sq_min), Rat(27, 2));

    auto sxy = enumerate_Sxy(x, y, Rat(3) - sq_min);
    r.expect_count("Sxy", static_cast<std::int64_t>(sxy.size()), 937);
    auto sqxy = enumerate_Sqxy(sxy, q, rho);
    r.expect_count("Sqxy", static_cast<std::int64_t>(sqxy.size()), 2811);

    std::array<RealTriangle, 3> tris = {make_real_triangle(rho, q, X), make_real_triangle(rho, q, Y),
                                        make_real_triangle(rho, q, Z)};
    std::int64_t meet = 0, cs = 0, n3 = 0, shift = 0;
    std::vector<HermVec> survivors;
    for (const auto& s : sqxy) {
        bool m = false;
        for (const auto& t : tris) m = m || !origin_in_triangle(triangle_image(t, s)).miss();
        if (!m) continue;
        ++meet;
        const HermVec s9 = lam_part(s);
        const RealQuad sl2 = RealQuad(3) - norm(s) + norm(s9);
        const CycScalar sl9 = inner(s9, l9);
        if (sl9.abs2() > RealQuad(9) * sl2) {
            ++cs;
            continue;
        }
        if (sl2 == RealQuad(3)) {
            ++n3;
            continue;
        }
        bool hit = false;
        for (int k = 0; k < 6 && !hit; ++k) hit = sl2 - (unit6(k) * sl9).re() * RealQuad(2) + RealQuad(9) == RealQuad(3);
        if (hit) {
            ++shift;
            continue;
        }
        survivors.push_back(s);
    }
    r.expect_count("meet", meet, 460);
    r.expect_count("cs_reject", cs, 449);
    r.expect_count("norm3_reject", n3, 4);
    r.expect_count("unit_shift_reject", shift, 3);
    r.expect_count("survivors", static_cast<std::int64_t>(survivors.size()), 4);
    r.expect(detail::same_set(survivors, {x, Wb() * y, z, x + z}), "survivors are x, wbar y, z, x + z");
    for (const auto& s : survivors) {
        r.expect_eq("survivor norm", CycScalar(norm(s)), Q(3));
        r.expect(member_LeechModel(s), "survivor in L", render(s));
    }
}

// sinh^2 d(tau, s-perp) = |<tau,s>|^2 / (3 (6 + 8 sqrt3)); minimal iff |<tau,s>|^2 = 3.
inline void mirrors_near_tau(const Context& c, const RunOptions&, Recorder& r) {
    const auto& P = c.P;
    const RealQuad m = RealQuad(6, 8);
    r.expect_eq("cosh^2 d(tau,p_inf)", cosh2(P.tau, P.p_inf), RealQuad(19, 8) / m);
    r.expect_eq("sinh^2 d(tau,p_1-perp)", sinh2_to_mirror(P.tau, P.p(1)), RealQuad(1) / m);
    r.expect_eq("sinh^2 d(tau,l_1-perp)", sinh2_to_mirror(P.tau, P.l(1)), RealQuad(1) / m);

    // d(tau,p_inf) + d_min < r_3 as cosh^2 of the sum against 1 + 4/3
    const RealQuad ch1 = RealQuad(19, 8) / m, sh1 = ch1 - RealQuad(1);
    const RealQuad sh2 = RealQuad(1) / m, ch2 = sh2 + RealQuad(1);
    const RealQuad Cc = RealQuad(make_rat(7, 3)), A = ch1 * ch2, B = sh1 * sh2;
    const RealQuad gap = Cc - A - B;
    r.expect(sign_realquad(gap) > 0 && RealQuad(4) * A * B < gap * gap, "d(tau,p_inf) + d_min < r_3",
             render(gap));

    std::vector<HermVec> minimizers;
    std::int64_t below = 0;
    for (int b = 0; b <= 2; ++b) {
        BatchStream st(b);
        SmallRoot s;
        std::int64_t n = 0;
        while (st.next(s)) {
            ++n;
            // <tau,s> = a - sqrt3 b
            SmallEis a = SmallEis(-4) * s[0].conj(), bb = s[0].conj();
            for (int k = 1; k < 14; ++k) a += s[k].conj();
            std::int64_t u = a.norm() + 3 * bb.norm() - 3;
            std::int64_t d = 2 * a.a * bb.a + 2 * a.b * bb.b - a.a * bb.b - a.b * bb.a;  // 2 Re(a conj b)
            // sign of u - sqrt3 d
            int sg;
            if (u >= 0 && d <= 0) sg = (u == 0 && d == 0) ? 0 : 1;
            else if (u <= 0 && d >= 0) sg = -1;
            else sg = u > 0 ? (u * u > 3 * d * d ? 1 : -1) : (u * u > 3 * d * d ? -1 : 1);
            if (sg < 0) ++below;
            if (sg == 0) minimizers.push_back(to_hermvec(s));
        }
        r.count("batch" + std::to_string(b), n);
    }
    r.expect_count("closer_than_point_mirrors", below, 0);
    r.expect_count("minimizers", static_cast<std::int64_t>(minimizers.size()), 26);
    r.expect(detail::same_set(minimizers, P.roots26()), "minimizers are the point and line roots");
    r.witness("min sinh^2", render(RealQuad(1) / m));
}

inline void step1_triangles(const Context& c, const RunOptions&, Recorder& r) {
    const auto& P = c.P;
    // cosh^2 d(p_inf,tau) < cosh^2 r_2 = 2
    r.expect_lt("19 + 8 sqrt3 < 12 + 16 sqrt3", RealQuad(19, 8), RealQuad(12, 16));
    r.expect_lt("cosh^2 d(p_inf,tau) < 2", cosh2(P.tau, P.p_inf), RealQuad(2));
    const CMatrix F = isometry_F(P);

    struct Case {
        std::string name;
        HermVec s, apex;
        bool swap;
    };
    const Case cases[2] = {{"point", P.p(1), Th() * P.p_inf, false}, {"line", P.l(1), P.l_inf, true}};
    for (const auto& cs : cases) {
        const HermVec x = project_orthogonal(P.tau, cs.s);
        r.expect(cosh2(x, cs.apex) <= cosh2(P.tau, cs.apex), cs.name + ": x is no farther than tau from the apex");
        RealTriangle T = make_real_triangle(P.tau, x, cs.apex);
        // roots near the apex are F-images of those near p_inf in the line case
        auto image = [&](const SmallRoot& s) { return cs.swap ? F.apply(to_hermvec(s)) : to_hermvec(s); };

        std::int64_t n0 = 0, bad0 = 0;
        BatchStream b0(0);
        SmallRoot s;
        while (b0.next(s)) {
            HermVec v = image(s);
            OriginHit h = origin_in_triangle(triangle_image(T, v));
            OriginHit want = v == cs.s ? detail::kEdge23 : detail::kVertex3;
            ++n0;
            if (!(h == want)) {
                ++bad0;
                r.fail(cs.name + " batch 0 root meets T as expected", render(v) + " " + describe(h));
            }
        }
        r.count(cs.name + "_batch0", n0);
        std::int64_t n1 = 0, hits1 = 0;
        BatchStream b1(1);
        while (b1.next(s)) {
            ++n1;
            OriginHit h = origin_in_triangle(triangle_image(T, image(s)));
            if (!h.miss()) {
                ++hits1;
                r.fail(cs.name + " batch 1 mirror misses T", render_root(s) + " " + describe(h));
            }
        }
        r.expect_count(cs.name + "_batch1", n1, 1053);
        r.count(cs.name + "_batch1_hits", hits1);
    }
    r.note("T lies within d(p_inf,tau) of the apex by convexity of balls (cited, not recomputed)");
}

inline void step4_point(const Context& c, const RunOptions& o, Recorder& r) {
    const auto& P = c.P;
    const HermVec& rho = P.rho;
    const HermVec x = rho + P.p(1) / Th();
    const HermVec V = (Thb() * Psib()) * P.p_inf;
    r.expect_eq("x^2", CycScalar(norm(x)), Q(-1));
    r.expect_eq("<rho,x>", inner(rho, x), Q(-1));
    r.expect_eq("<rho,V>", inner(rho, V), Q(-39));
    r.expect_eq("<x,V>", inner(x, V), Q(-39));
    r.expect_eq("x = projection of rho to p_1-perp", x, project_orthogonal(rho, P.p(1)));
    r.expect_eq("ht(x)", height(x, rho), RealQuad(1));
    r.expect_eq("ht(p_inf)", height(P.p_inf, rho), RealQuad(13));

    // where the horosphere of height 3 meets the edge V x
    const ExtScalar t(Q(-39), Q(9), Rat(26));
    ExtScalar n = ext_norm_combo(V, t, x), pr = ext_inner_combo(V, t, x, rho), pv = ext_inner_combo(V, t, x, V);
    r.expect(n == ext(Q(-702), Rat(26)), "norm of V + (9 sqrt26 - 39) x is -702");
    r.expect(pr * pr.conj() == ext(Q(3) * Q(702), Rat(26)), "height of V + (9 sqrt26 - 39) x is 3");
    r.expect(pv == ExtScalar(Q(1404), Q(-351), Rat(26)), "<V + (9 sqrt26 - 39) x, V> = 1404 - 351 sqrt26");
    // cosh^2 = |<.,V>|^2 / (702 * 117)
    ExtScalar ch = ExtScalar(Q(63), Q(-12), Rat(26));
    r.expect(pv * pv.conj() == ch * ext(Q(702 * 117), Rat(26)), "cosh^2 to p_inf is 63 - 12 sqrt26");
    r.expect(sign_ext(ext(Q(2), Rat(26)) - ch) > 0, "63 - 12 sqrt26 < 2");
    r.note("T lies in the second horoball around rho union the second ball around p_inf by convexity "
           "(cited, not recomputed)");

    std::array<SmallVertex, 3> T = {to_small_vertex(rho), to_small_vertex(x), to_small_vertex(V)};
    for (int i = 1; i <= 13; ++i) {
        OriginHit h = small_triangle_hit(T, detail::small_root(P.p(i)));
        r.expect(h == (i == 1 ? detail::kEdge23 : detail::kVertex3), idx_label("p_", i, " meets T as stated"),
                 describe(h));
    }
    // small enough to rescan every time; no checkpoint
    ScanOptions so = detail::scan_options(o);
    so.cache_dir.reset();
    ScanResult b1 = scan_batch(1, false, ScanKind::Count, so, [&](const SmallRoot& s) {
        return !small_triangle_hit(T, s).miss();
    });
    r.expect_count("batch1", static_cast<std::int64_t>(b1.count), 1053);
    r.expect_count("batch1_hits", static_cast<std::int64_t>(b1.hits), 0);
    for (const auto& smp : b1.samples) r.witness("batch 1 hit", smp);

    // Leech model: sigma data and closed forms
    const CMatrix M = model_isometry(P, c.Lm);
    const HermVec xL = M.apply(x, form_Leech()), VL = M.apply(V, form_Leech());
    const HermVec C = lam_C();
    SigmaForm fx = sigma_decompose(xL), fv = sigma_decompose(VL);
    r.expect(fx.sigma == detail::lam_zero() && fx.m == Q(1) / Th() && fx.N == RealQuad(-1) &&
                 fx.nu() == -Th() * Q(1, 18),
             "sigma data of x");
    r.expect(fv.sigma == (Q(-13) * Th()) * C && fv.m == Q(-13) * Th() && fv.N == RealQuad(-117) &&
                 fv.nu() == Q(-169, 2) * Th(),
             "sigma data of V");
    std::int64_t nsamp = 0;
    for (const auto& s : detail::leech_samples(c)) {
        SigmaForm f = sigma_decompose(s);
        CycScalar xs = Th() * Q(1, 6) * CycScalar(norm(f.sigma)) - Th() * Q(1, 3) * (Q(3) * f.nu() + Th() * Q(1, 2));
        CycScalar vs = Q(13, 2) * Th() * (CycScalar(norm(C - f.sigma)) - Q(36, 13)) -
                       Q(13) * Th() * (imag_part(inner(C, f.sigma)) + Q(3) * (f.nu() + Th() * Q(1, 6)));
        r.expect_eq("<x,s> closed form", inner(xL, s), xs);
        r.expect_eq("<V,s> closed form", inner(VL, s), vs);
        ++nsamp;
    }
    r.count("closed_form_samples", nsamp);

    // no sigma with |C - sigma|^2 < 36/13, and equality exactly at C + P_i/psi
    auto nb = detail::neighbors_within(c.engines->lambda(), C, Rat(42, 13), Rat(36, 13));
    r.expect(nb.all_at && nb.points.size() == 13, "nearest points of Lambda to C lie at 36/13");

    // the Leech roots with those sigma: p_i + n rho
    RealTriangle RT = make_real_triangle(rho, x, V);
    for (int i = 1; i <= 13; ++i) {
        FamilyResult f = origin_in_triangle_family(triangle_image(RT, P.p(i)), triangle_image(RT, rho));
        OriginHit want = i == 1 ? detail::kEdge23 : detail::kVertex3;
        r.expect(f.hits.size() == 1 && f.hits.count(0) && f.hits.at(0) == want && !f.unbounded_pos &&
                     !f.unbounded_neg,
                 idx_label("family p_", i, " + n rho meets T only at n = 0"), detail::hit_list(f));
    }
}

inline void step4_line(const Context& c, const RunOptions& o, Recorder& r) {
    const auto& P = c.P;
    const HermVec& rho = P.rho;
    const HermVec x = rho - Wb() * P.l(1);
    const HermVec V = (W() * Psib()) * P.l_inf;
    r.expect_eq("x = projection of rho to l_1-perp", x, project_orthogonal(rho, P.l(1)));
    r.expect_eq("x^2", CycScalar(norm(x)), Q(-3));
    r.expect_eq("<rho,x>", inner(rho, x), Q(-3));
    r.expect_eq("V^2", CycScalar(norm(V)), Q(-39));
    r.expect_eq("<rho,V>", inner(rho, V), Q(-39));
    r.expect_eq("<x,V>", inner(x, V), Q(-39));

    // where the horosphere of height 4 meets the edge V x
    const ExtScalar t(Q(-13), Q(4), Rat(39));
    ExtScalar n = ext_norm_combo(V, t, x), pr = ext_inner_combo(V, t, x, rho), pv = ext_inner_combo(V, t, x, V);
    r.expect(n == ext(Q(-1404), Rat(39)), "norm of V + (4 sqrt39 - 13) x is -1404");
    r.expect(pr * pr.conj() == ext(Q(4) * Q(1404), Rat(39)), "height of V + (4 sqrt39 - 13) x is 4");
    r.expect(pv == ExtScalar(Q(468), Q(-156), Rat(39)), "<V + (4 sqrt39 - 13) x, V> = 468 - 156 sqrt39");
    ExtScalar ch = ExtScalar(Q(64, 3), Q(-8, 3), Rat(39));
    r.expect(pv * pv.conj() == ch * ext(Q(1404 * 39), Rat(39)), "cosh^2 to l_inf is 64/3 - (8/3) sqrt39");
    r.expect(sign_ext(ext(Q(5), Rat(39)) - ch) > 0, "64/3 - (8/3) sqrt39 < 1 + 4 = cosh^2 r_6");
    r.note("T lies in the third horoball around rho union the sixth ball around l_inf by convexity "
           "(cited, not recomputed)");

    std::array<SmallVertex, 3> T = {to_small_vertex(rho), to_small_vertex(x), to_small_vertex(V)};
    const CMatrix F = isometry_F(P);
    std::array<SmallVertex, 3> FT = {to_small_vertex(F.apply(rho)), to_small_vertex(F.apply(x)),
                                     to_small_vertex(F.apply(V))};
    for (int j = 1; j <= 13; ++j) {
        OriginHit h = small_triangle_hit(T, detail::small_root(P.l(j)));
        r.expect(h == (j == 1 ? detail::kEdge23 : detail::kVertex3), idx_label("l_", j, " meets T as stated"),
                 describe(h));
        // F^2 = -1, so F(T) meets p_i-perp iff T meets l_{14-i}-perp
        OriginHit g = small_triangle_hit(FT, detail::small_root(P.p(14 - j)));
        r.expect(g == h, idx_label("F(T) against p_", 14 - j, ""), describe(g));
    }

    static const std::int64_t expected[6] = {13, 1053, 116532, 743418, 107953560, 480961338};
    const int last = o.tier == Tier::Long ? 5 : 3;
    ScanOptions so = detail::scan_options(o);
    for (int b = 1; b <= last; ++b) {
        ScanResult res = scan_batch(b, false, ScanKind::Step4Line, so, [&](const SmallRoot& s) {
            return !small_triangle_hit(FT, s).miss();
        });
        r.expect_count("batch" + std::to_string(b), static_cast<std::int64_t>(res.count), expected[b]);
        r.expect_count("batch" + std::to_string(b) + "_hits", static_cast<std::int64_t>(res.hits), 0);
        for (const auto& smp : res.samples) r.witness("batch " + std::to_string(b) + " hit", smp);
        if (res.resumed) r.note("batch " + std::to_string(b) + " resumed from checkpoint");
    }
    if (last < 5) r.note("batches 4-5 skipped at tier fast; run with tier long to scan them");

    // Leech model analysis
    const HermVec& rl = c.Lm.rho;
    const HermVec xL = rl - Wb() * c.Lm.l(1);
    const HermVec VL = (W() * Psib()) * c.Lm.l_inf;
    const HermVec C = lam_C();
    const HermVec Cp = C - (Wb() / (Th() * Psi())) * lam_L(1);
    SigmaForm fx = sigma_decompose(xL), fv = sigma_decompose(VL);
    r.expect(fx.sigma == (-Th()) * Cp && fx.m == -Th() && fx.N == RealQuad(-3) && fx.nu() == -Th(), "sigma data of x");
    r.expect(fv.sigma == (Q(-13) * Th()) * C && fv.m == Q(-13) * Th() && fv.N == RealQuad(-39) &&
                 fv.nu() == Q(-221, 2) * Th(),
             "sigma data of V");

    // second-shell roots (m = theta): real parts are >= 0
    std::int64_t n2 = 0;
    for (const auto& s : detail::second_shell_samples(c)) {
        SigmaForm f = sigma_decompose(s);
        r.expect_eq("second-shell m", f.m, Th());
        HermVec st = f.sigma / Th();
        r.expect_eq("Re<x,s> closed form", inner(xL, s).re(), RealQuad(make_rat(3, 2)) * norm(st - Cp));
        r.expect_eq("Re<V,s> closed form", inner(VL, s).re(),
                    RealQuad(make_rat(39, 2)) * (norm(st - C) - RealQuad(make_rat(12, 13))));
        ++n2;
    }
    r.count("second_shell_samples", n2);
    RealTriangle RT = make_real_triangle(rho, x, V);
    {
        const HermVec base = Wb() * P.l(1), step = Th() * rho;
        for (long k = -3; k <= 3; ++k) {
            HermVec s = base + Q(k) * step;
            r.expect(inner(V, s) == Q(39 * k) * Th() && inner(x, s) == Q(3 * k) * Th(),
                     "wbar l_1 + n theta rho inner products", std::to_string(k));
        }
        FamilyResult f = origin_in_triangle_family(triangle_image(RT, base), triangle_image(RT, step));
        r.expect(f.hits.size() == 1 && f.hits.count(0) && f.hits.at(0) == detail::kEdge23 && !f.unbounded_pos &&
                     !f.unbounded_neg,
                 "family wbar l_1 + n theta rho meets T only at l_1", detail::hit_list(f));
    }

    // Leech roots: imaginary parts; Cp is at distance^2 3 from Lambda
    std::int64_t n1 = 0;
    for (const auto& s : detail::leech_samples(c)) {
        SigmaForm f = sigma_decompose(s);
        r.expect_eq("Im<x,s> closed form", imag_part(inner(xL, s)),
                    Th() * Q(1, 2) * (CycScalar(norm(f.sigma - Cp)) - Q(2)));
        r.expect_eq("Im<V,s> closed form", imag_part(inner(VL, s)),
                    Q(13, 2) * Th() * (CycScalar(norm(C - f.sigma)) - Q(38, 13)));
        ++n1;
    }
    r.count("leech_samples", n1);
    r.expect(member_Lambda(Th() * Cp) && norm(Cp) == RealQuad(3), "theta C' is a norm-9 vector of Lambda");
    auto nc = c.engines->lambda().enumerate(Cp, Rat(3));
    bool at3 = !nc.empty();
    for (const auto& h : nc) at3 = at3 && h.dist2 == Rat(3);
    r.expect(at3, "nearest points of Lambda to C' lie at distance^2 3");
    auto nb = detail::neighbors_within(c.engines->lambda(), C, Rat(42, 13), Rat(36, 13));
    r.expect(nb.all_at && nb.points.size() == 13, "Lambda points within 42/13 of C are the 13 at 36/13");

    // sigma = C + P_i/psi: s = p_i + n rho, with real crossings A and B of opposite sign never
    for (int i = 1; i <= 13; ++i) {
        for (long k = -4; k <= 4; ++k) {
            HermVec s = P.p(i) + Q(k) * rho;
            CycScalar xs = inner(x, s), vs = inner(V, s);
            CycScalar xw = incident(i, 1) ? Th() - Q(3 * k) + Wb() * Th() : Th() - Q(3 * k);
            r.expect_eq(idx_label("<x,p_", i, " + n rho>"), xs, xw);
            r.expect_eq(idx_label("<V,p_", i, " + n rho>"), vs, Thb() + Q(6) - Q(39 * k));
            RealQuad A = detail::real_crossing(vs, Th()), B = detail::real_crossing(vs, xs);
            r.expect_eq(idx_label("A for p_", i, ""), A, RealQuad(Rat(3) - make_rat(39 * k, 2)));
            r.expect_eq(idx_label("B for p_", i, ""), B, RealQuad(Rat(incident(i, 1) ? 3 - 15 * k : 3 - 21 * k)));
        }
        FamilyResult f = origin_in_triangle_family(triangle_image(RT, P.p(i)), triangle_image(RT, rho));
        r.expect(f.hits.empty() && !f.unbounded_pos && !f.unbounded_neg,
                 idx_label("family p_", i, " + n rho misses T"), detail::hit_list(f));
    }
}

// The 1-ball of the invariant sublattice, coordinates [u,v] = (u rho' + v rho)/psibar.
inline void complex_triangles(const Context& c, const RunOptions&, Recorder& r) {
    const auto& P = c.P;
    const HermVec rp = Psib() * P.p_inf - W() * P.rho;
    std::vector<CycScalar> rc(14, W());
    rc[0] = Wb() * Psib();
    r.expect_eq("rho'", rp, HermVec(form_P2F3(), rc));
    r.expect_eq("<rho,rho'>", inner(P.rho, rp), Q(13) * Th());
    r.expect_eq("rho'^2", CycScalar(norm(rp)), Q(0));
    const HermVec e1 = rp / Psib(), e2 = P.rho / Psib();
    r.expect(inner(e1, e1).is_zero() && inner(e2, e2).is_zero() && inner(e1, e2) == Thb() && inner(e2, e1) == Th(),
             "Gram of the superlattice is [[0,thetabar],[theta,0]]");
    auto bracket = [&](const CycScalar& u, const CycScalar& v) { return u * e1 + v * e2; };
    auto coords = [&](const HermVec& X) { return std::pair{inner(X, e2) / Thb(), inner(X, e1) / Th()}; };
    r.expect_eq("p_inf = [1,w]", P.p_inf, bracket(Q(1), W()));
    r.expect_eq("l_inf = [thetabar wbar, w - 2]", P.l_inf, bracket(Thb() * Wb(), W() - Q(2)));
    auto [tu, tv] = coords(P.tau);
    r.expect_eq("tau plots to 1 + i", tv / tu, Q(1) + CycScalar::i());

    // T = triangle rho p_inf l_inf plotted in the upper half plane; the two
    // complex triangles through tau are its halves
    const CycScalar third = Q(1, 3);
    auto circ = [&](const CycScalar& z) { return (z - third).abs2(); };
    const RealQuad r2 = RealQuad(make_rat(13, 9));
    auto in_T = [&](const CycScalar& z) {
        RealQuad re = z.re();
        return sign_realquad(z.im()) > 0 && re >= RealQuad(make_rat(-1, 2)) && re <= RealQuad(make_rat(3, 2)) &&
               circ(z) >= r2;
    };
    const CycScalar zp = W(), zl = Q(3, 2) + Th() * Q(1, 6), z1 = Q(1) - Wb();
    r.expect_eq("p_inf on the circle", circ(zp), r2);
    r.expect_eq("l_inf on the circle", circ(zl), r2);
    r.expect_eq("tau on the circle", circ(Q(1) + CycScalar::i()), r2);
    r.expect_eq("-wbar inside the circle", circ(-Wb()), RealQuad(make_rat(7, 9)));
    r.expect_eq("1 - wbar outside the circle", circ(z1), RealQuad(make_rat(19, 9)));
    r.expect(!in_T(-Wb()) && in_T(z1) && in_T(zp) && in_T(zl), "n = -1, 1 give points of T and n = 0 does not");
    r.expect_eq("lowest point of T is l_inf", zl.im(), RealQuad(0, make_rat(1, 6)));

    // norm -3 vectors with |u|^2 <= 3 cover T (Im z = sqrt3 / (2|u|^2) >= sqrt3/6); |z|^2 <= 3 on T
    std::vector<CycScalar> found;
    std::int64_t neg = 0, pos = 0;
    auto add = [&](const CycScalar& z) {
        for (const auto& f : found)
            if (f == z) return;
        found.push_back(z);
    };
    for (long a = -2; a <= 2; ++a)
        for (long b = -2; b <= 2; ++b) {
            CycScalar u = Q(a) + Q(b) * W();
            if (u.is_zero() || u.abs2() > RealQuad(4)) continue;
            for (long e = -7; e <= 7; ++e)
                for (long f = -7; f <= 7; ++f) {
                    CycScalar v = Q(e) + Q(f) * W();
                    if (v.abs2() > RealQuad(36)) continue;
                    HermVec uv(form_ESuper(), {u, v});
                    RealQuad nn = norm(uv);
                    if (nn == RealQuad(-3) && in_T(v / u)) {
                        ++neg;
                        add(v / u);
                    } else if (nn == RealQuad(3)) {
                        // [ubar, vbar] spans the orthogonal complement and has norm -3
                        HermVec o(form_ESuper(), {u.conj(), v.conj()});
                        if (!inner(uv, o).is_zero() || norm(o) != RealQuad(-3)) r.fail("[ubar,vbar] orthogonal", render(uv));
                        if (in_T(v.conj() / u.conj())) {
                            ++pos;
                            add(v.conj() / u.conj());
                        }
                    }
                }
        }
    r.count("norm_minus3_in_T", neg);
    r.count("norm3_perp_in_T", pos);
    r.expect_count("points", static_cast<std::int64_t>(found.size()), 3);
    for (const auto& z : {zp, zl, z1})
        r.expect(std::find(found.begin(), found.end(), z) != found.end(), "special point of T", render(z));

    // membership in F = span(rho, p_inf) = {[u,v] : psibar | v - u w}
    auto in_F = [&](const CycScalar& u, const CycScalar& v) { return ((v - u * W()) / Psib()).in_E(); };
    auto in_L = [&](const CycScalar& u, const CycScalar& v) {
        HermVec X = bracket(u, v);
        for (const auto& k : X.coords())
            if (!k.in_E()) return false;
        return member_L(X);
    };
    r.expect(in_F(Q(1), W()) && in_L(Q(1), W()), "p_inf in F");
    r.expect(in_F(Q(0), Psib()) && in_L(Q(0), Psib()), "rho in F");
    r.expect(!in_F(Q(1), Q(1) - Wb()) && !in_L(Q(1), Q(1) - Wb()), "[1,1-wbar] not in F");
    r.expect(!in_F(Q(1), Q(1) - W()) && !in_L(Q(1), Q(1) - W()), "[1,1-w] not in F");
    r.expect_eq("[1,1-w] norm", CycScalar(norm(HermVec(form_ESuper(), {Q(1), Q(1) - W()}))), Q(3));
    r.expect(inner(bracket(Q(1), Q(1) - Wb()), bracket(Q(1), Q(1) - W())).is_zero(), "[1,1-w] is orthogonal to [1,1-wbar]");
}

}  // namespace mirrorcert::checks
