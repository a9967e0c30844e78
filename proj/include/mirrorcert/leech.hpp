#pragma once
// The 13-coordinate complex Leech lattice, the Leech model of L, the
// (sigma, m, N, nu) coordinates, Leech roots and Heisenberg translations.

#include <array>
#include <stdexcept>
#include <vector>

#include "mirrorcert/planeL.hpp"

namespace mirrorcert {

// Standard hermitian form divided by 13.
inline const FormPtr& form_Lambda() {
    static const FormPtr f = make_diag_form(Model::LambdaStd, std::vector<CycScalar>(13, Q(1, 13)));
    return f;
}

// Lambda (x) C  plus the hyperbolic cell [[0, thetabar], [theta, 0]].
inline const FormPtr& form_Leech() {
    static const FormPtr f = [] {
        std::vector<CycScalar> g(15 * 15);
        for (int i = 0; i < 13; ++i) g[i * 15 + i] = Q(1, 13);
        g[13 * 15 + 14] = Thb();
        g[14 * 15 + 13] = Th();
        return std::make_shared<const HermForm>(Model::LeechModel, 15, std::move(g));
    }();
    return f;
}

inline bool member_Lambda(const std::vector<EisInt>& x) {
    if (x.size() != 13) throw std::invalid_argument("Lambda vectors have 13 coordinates");
    EisInt sum;
    Word w{};
    for (int k = 0; k < 13; ++k) {
        sum += x[k];
        w[k] = static_cast<std::uint8_t>(x[k].mod_theta());
    }
    if (!sum.is_zero()) return false;
    EisInt pb = EisInt(1, -3);  // psibar = 1 - 3w
    for (int k = 1; k < 13; ++k)
        if (!divides_in_E(pb, x[k] - x[0])) return false;
    return line_code().contains(w) && word_sum(w) == 0;
}

inline bool member_Lambda(const HermVec& v) {
    if (v.size() != 13) throw std::invalid_argument("Lambda vectors have 13 coordinates");
    std::vector<EisInt> x;
    for (const auto& c : v.coords()) {
        if (!c.in_E()) return false;
        x.push_back(c.to_eis());
    }
    return member_Lambda(x);
}

inline HermVec lambda_vec(const std::vector<CycScalar>& c) { return HermVec(form_Lambda(), c); }

// P_i = (12 theta at i, thetabar elsewhere)
inline HermVec lam_P(int i) {
    std::vector<CycScalar> c(13, Thb());
    c.at(i - 1) = Q(12) * Th();
    return lambda_vec(c);
}

// L_j = (-9 on line j, 4 elsewhere)
inline HermVec lam_L(int j) {
    std::vector<CycScalar> c(13, Q(4));
    for (int p : plane().line(j)) c[p - 1] = Q(-9);
    return lambda_vec(c);
}

inline HermVec lam_C() { return (-Psi().inverse()) * lam_P(1); }
inline HermVec lam_delta(int i, int j) { return lam_L(i) - lam_L(j); }
inline HermVec lam_eps(int i, int j) { return Psi().inverse() * (lam_P(i) - lam_P(j)); }

inline HermVec default_lambda6() { return lam_eps(2, 1); }
inline HermVec default_lambda9() { return Th() * lam_C() - (Wb() / Psi()) * lam_L(1); }

// ---------------------------------------------------------------------------
// Leech model vectors (x; y, z).

inline HermVec leech_vec(const HermVec& lam, const CycScalar& y, const CycScalar& z) {
    if (lam.form() != form_Lambda()) throw std::invalid_argument("Lambda part must carry the Lambda form");
    std::vector<CycScalar> c = lam.coords();
    c.push_back(y);
    c.push_back(z);
    return HermVec(form_Leech(), std::move(c));
}

inline HermVec leech_vec(const std::vector<CycScalar>& lam, const CycScalar& y, const CycScalar& z) {
    return leech_vec(lambda_vec(lam), y, z);
}

inline HermVec lam_part(const HermVec& v) {
    if (v.form() != form_Leech()) throw std::invalid_argument("expected a Leech-model vector");
    return lambda_vec(std::vector<CycScalar>(v.coords().begin(), v.coords().begin() + 13));
}

inline HermVec leech_rho() { return leech_vec(HermVec::zero(form_Lambda()), Q(0), Q(1)); }

inline bool member_LeechModel(const HermVec& v) {
    if (v.form() != form_Leech()) throw std::invalid_argument("expected a Leech-model vector");
    if (!v[13].in_E() || !v[14].in_E()) return false;
    return member_Lambda(lam_part(v));
}

struct NamedVectorsLeech {
    std::array<HermVec, 13> p_;
    std::array<HermVec, 13> l_;
    HermVec p_inf, l_inf, rho;

    const HermVec& p(int i) const { return p_.at(i - 1); }
    const HermVec& l(int j) const { return l_.at(j - 1); }
    HermVec& p(int i) { return p_.at(i - 1); }
    HermVec& l(int j) { return l_.at(j - 1); }

    static NamedVectorsLeech standard() {
        NamedVectorsLeech n;
        const CycScalar pt = Psib() * Th();
        n.p(1) = leech_vec(std::vector<CycScalar>(13), Q(1), -W());
        for (int i = 2; i <= 13; ++i) {
            std::vector<CycScalar> c(13);
            c[0] = -pt;
            c[i - 1] = pt;
            n.p(i) = leech_vec(c, Q(1), -Wb());
        }
        for (int j = 1; j <= 13; ++j) {
            std::vector<CycScalar> c(13, Q(-1));
            bool through1 = incident(1, j);
            for (int p : plane().line(j)) c[p - 1] = Q(-3) * W();
            if (through1) {
                c[0] = Q(-9) * Wb();
                n.l(j) = leech_vec(c, Th() * W(), Q(2) * Wb());
            } else {
                c[0] = Q(4) * W() - Q(8) * Wb();
                n.l(j) = leech_vec(c, Th() * W(), Thb());
            }
        }
        std::vector<CycScalar> pc(13, Th());
        pc[0] = Q(12) * Thb();
        n.p_inf = leech_vec(pc, Psi(), -Wb() * Psi());
        std::vector<CycScalar> lc(13, Q(3) * Wb());
        lc[0] = Q(-36) * Wb();
        n.l_inf = leech_vec(lc, -Wb() * Th() * Psi(), Q(6) * Wb() - W());
        n.rho = leech_rho();
        return n;
    }

    std::vector<HermVec> family() const {
        std::vector<HermVec> v(p_.begin(), p_.end());
        v.insert(v.end(), l_.begin(), l_.end());
        v.push_back(rho);
        v.push_back(p_inf);
        v.push_back(l_inf);
        return v;
    }
};

inline std::vector<HermVec> family_P(const NamedVectorsP& n) {
    std::vector<HermVec> v = n.roots26();
    v.push_back(n.rho);
    v.push_back(n.p_inf);
    v.push_back(n.l_inf);
    return v;
}

// Linear map from the 14-coordinate model into the Leech model sending each
// named vector to its namesake.
inline CMatrix model_isometry(const NamedVectorsP& a, const NamedVectorsLeech& b) {
    std::vector<HermVec> src, dst;
    for (int i = 1; i <= 13; ++i) {
        src.push_back(a.p(i));
        dst.push_back(b.p(i));
    }
    src.push_back(a.l(1));
    dst.push_back(b.l(1));
    return CMatrix::from_columns(dst) * CMatrix::from_columns(src).inverse();
}

// ---------------------------------------------------------------------------
// s = (sigma; m, (theta/conj m)((sigma^2 - N)/6 + nu)), nu = nu_coef * i.

struct SigmaForm {
    HermVec sigma;
    CycScalar m;
    RealQuad N;
    RealQuad nu_coef;

    CycScalar nu() const { return CycScalar(nu_coef) * CycScalar::i(); }
};

inline HermVec reassemble(const SigmaForm& s) {
    CycScalar n2 = CycScalar(norm(s.sigma));
    CycScalar z = (Th() / s.m.conj()) * ((n2 - CycScalar(s.N)) * Q(1, 6) + s.nu());
    return leech_vec(s.sigma, s.m, z);
}

inline SigmaForm sigma_decompose(const HermVec& v) {
    if (inner(v, leech_rho()).is_zero()) throw std::domain_error("no sigma form");
    SigmaForm s;
    s.sigma = lam_part(v);
    s.m = v[13];
    s.N = norm(v);
    CycScalar nu = v[14] * s.m.conj() / Th() - (CycScalar(norm(s.sigma)) - CycScalar(s.N)) * Q(1, 6);
    if (!nu.re().is_zero()) throw std::logic_error("sigma form: nu is not imaginary");
    s.nu_coef = nu.im();
    return s;
}

inline CycScalar imag_part(const CycScalar& z) { return (z - z.conj()) * Q(1, 2); }

// <s, s'> from the sigma data alone.
inline CycScalar ip_via_sigma(const SigmaForm& a, const SigmaForm& b) {
    CycScalar ma2 = CycScalar(a.m.abs2()), mb2 = CycScalar(b.m.abs2());
    HermVec ua = a.sigma / a.m, ub = b.sigma / b.m;
    CycScalar d2 = CycScalar(norm(ua - ub));
    CycScalar bracket = (CycScalar(b.N) / mb2 + CycScalar(a.N) / ma2 - d2) * Q(1, 2) + imag_part(inner(ua, ub)) +
                        Q(3) * (b.nu() / mb2 - a.nu() / ma2);
    return a.m * b.m.conj() * bracket;
}

// theta*nu must be a half-odd integer when 6 | sigma^2 and an integer otherwise.
inline bool nu_admissible(const HermVec& sigma, const CycScalar& nu) {
    CycScalar t = Th() * nu;
    if (!t.is_real() || t.real_value().b != 0) return false;
    Rat tv = t.real_value().a;
    RealQuad n2 = norm(sigma);
    if (n2.b != 0 || !is_integral(n2.a)) return false;
    Int n = n2.a.get_num();
    bool six = mpz_divisible_ui_p(n.get_mpz_t(), 6) != 0;
    if (six) return is_integral(Rat(tv - make_rat(1, 2)));
    return is_integral(tv);
}

inline HermVec leech_root(const HermVec& sigma, const CycScalar& nu) {
    if (!member_Lambda(sigma)) throw std::domain_error("sigma is not in Lambda");
    if (!nu_admissible(sigma, nu)) throw std::domain_error("inadmissible nu");
    CycScalar z = Th() * ((CycScalar(norm(sigma)) - Q(3)) * Q(1, 6) + nu);
    return leech_vec(sigma, Q(1), z);
}

// ---------------------------------------------------------------------------
// Heisenberg translations T_{lam, z}.

struct Translation {
    HermVec lam;
    CycScalar z;
};

inline bool translation_valid(const Translation& t) {
    if (!member_Lambda(t.lam)) return false;
    if (!t.z.re().is_zero()) return false;
    CycScalar d = t.z - CycScalar(norm(t.lam)) * Q(1, 2);
    return divisible_by_theta(d);
}

// The valid z for a given lam: imaginary parts of theta*(a + (lam^2/3) w).
inline Translation make_translation(const HermVec& lam, long a) {
    RealQuad n2 = norm(lam);
    CycScalar e = Th() * (Q(a) + CycScalar(n2 * RealQuad(make_rat(1, 3))) * W());
    Translation t{lam, CycScalar(e.im()) * CycScalar::i()};
    if (!translation_valid(t)) throw std::domain_error("invalid translation");
    return t;
}

inline CMatrix translation_matrix(const Translation& t) {
    if (!translation_valid(t)) throw std::domain_error("invalid translation");
    CMatrix m = CMatrix::identity(15);
    CycScalar tb_inv = Thb().inverse();
    for (int k = 0; k < 13; ++k) m(14, k) = tb_inv * t.lam[k].conj() * Q(1, 13);
    for (int k = 0; k < 13; ++k) m(k, 13) = t.lam[k];
    m(14, 13) = Th().inverse() * (t.z - CycScalar(norm(t.lam)) * Q(1, 2));
    return m;
}

// (x; y, z) -> (-wbar x; y, z)
inline CMatrix q_matrix() {
    CMatrix m = CMatrix::identity(15);
    for (int k = 0; k < 13; ++k) m(k, k) = -Wb();
    return m;
}

// Reflection matrix of a root in a given form.
inline CMatrix reflection_matrix(const HermVec& s) {
    std::size_t n = s.size();
    std::vector<HermVec> cols;
    for (std::size_t k = 0; k < n; ++k) cols.push_back(reflect_omega(s, HermVec::unit(s.form(), k)));
    return CMatrix::from_columns(cols);
}

// Z[w]-basis of the Leech model of L: a basis of Lambda plus (0;1,0), (0;0,1).
inline std::vector<HermVec> leech_model_basis(const std::vector<HermVec>& lambda_basis) {
    std::vector<HermVec> out;
    for (const auto& b : lambda_basis) out.push_back(leech_vec(b, Q(0), Q(0)));
    out.push_back(leech_vec(HermVec::zero(form_Lambda()), Q(1), Q(0)));
    out.push_back(leech_vec(HermVec::zero(form_Lambda()), Q(0), Q(1)));
    return out;
}

// ---------------------------------------------------------------------------
// Z-basis of a 12-dimensional lattice in Lambda (x) Q(w): {v, w v}.

struct ZBasis {
    std::vector<HermVec> ebasis;       // Z[w]-basis
    std::vector<HermVec> real_basis;   // 24 vectors: b_2k = v_k, b_2k+1 = w v_k
    std::vector<std::vector<Rat>> gram;  // Re<b_i, b_j>
    CycScalar hermitian_det;

    std::size_t dim() const { return real_basis.size(); }

    // Lattice vector with integer coordinates n.
    HermVec combine(const std::vector<Int>& n) const {
        HermVec v = HermVec::zero(ebasis[0].form());
        for (std::size_t k = 0; k < ebasis.size(); ++k) {
            CycScalar c = CycScalar(Rat(n[2 * k])) + CycScalar(Rat(n[2 * k + 1])) * W();
            if (!c.is_zero()) v += c * ebasis[k];
        }
        return v;
    }
    HermVec combine_rat(const std::vector<Rat>& n) const {
        HermVec v = HermVec::zero(ebasis[0].form());
        for (std::size_t k = 0; k < ebasis.size(); ++k) {
            CycScalar c = CycScalar(n[2 * k]) + CycScalar(n[2 * k + 1]) * W();
            if (!c.is_zero()) v += c * ebasis[k];
        }
        return v;
    }
};

inline ZBasis make_zbasis(const std::vector<HermVec>& ebasis) {
    ZBasis z;
    z.ebasis = ebasis;
    for (const auto& v : ebasis) {
        z.real_basis.push_back(v);
        z.real_basis.push_back(W() * v);
    }
    std::size_t n = z.real_basis.size();
    z.gram.assign(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            RealQuad r = inner(z.real_basis[i], z.real_basis[j]).re();
            if (r.b != 0) throw std::domain_error("real Gram entry outside Q");
            z.gram[i][j] = z.gram[j][i] = r.a;
        }
    z.hermitian_det = gram_det(ebasis);
    return z;
}

// Generators delta_1j, eps_1j (j = 2..13) and P_1, reduced over Z[w].
inline ZBasis build_zbasis() {
    std::vector<HermVec> gens;
    for (int j = 2; j <= 13; ++j) gens.push_back(lam_eps(1, j));
    for (int j = 2; j <= 13; ++j) gens.push_back(lam_delta(1, j));
    gens.push_back(lam_P(1));
    SpanResult s = snf_span(gens);
    if (s.rank != 12) throw std::logic_error("Lambda generators have rank " + std::to_string(s.rank));
    ZBasis z = make_zbasis(s.basis);
    if (z.hermitian_det != Q(729)) throw std::logic_error("Lambda determinant is not 3^6");
    return z;
}

}  // namespace mirrorcert
