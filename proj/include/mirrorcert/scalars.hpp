#pragma once
// Exact arithmetic in Z[w], Q(w), Q(sqrt3) and Q(w, sqrt3), w = exp(2 pi i / 3).

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mirrorcert {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long p, long q = 1) {
    if (q == 0) throw std::domain_error("zero denominator");
    Rat r(p, q);
    r.canonicalize();
    return r;
}

inline int sgn(const Rat& r) { return ::sgn(r); }
inline int sgn(const Int& r) { return ::sgn(r); }
inline int sgn(std::int64_t x) { return (x > 0) - (x < 0); }

inline bool is_integral(const Rat& r) { return r.get_den() == 1; }

inline std::string render_rat(const Rat& r) { return r.get_str(); }

inline long as_long(const Int& x) { return x.get_si(); }
inline long as_long(std::int64_t x) { return static_cast<long>(x); }

// ---------------------------------------------------------------------------
// Eisenstein integers a + b*w over a chosen integer backing.

template <class I>
struct BasicEis {
    I a{0};
    I b{0};

    BasicEis() = default;
    BasicEis(I a_, I b_) : a(std::move(a_)), b(std::move(b_)) {}
    // NOLINTNEXTLINE(google-explicit-constructor)
    BasicEis(long v) : a(v), b(0) {}

    static BasicEis w() { return {I(0), I(1)}; }
    static BasicEis theta() { return {I(1), I(2)}; }
    static BasicEis psi() { return {I(4), I(3)}; }  // 1 - 3*conj(w)

    BasicEis conj() const { return {a - b, -b}; }
    I norm() const { return a * a - a * b + b * b; }
    bool is_zero() const { return a == 0 && b == 0; }
    // Z[w]/theta = F3 with w = 1.
    int mod_theta() const {
        I s = a + b;
        long v = as_long(I(s % 3));
        return static_cast<int>((v + 3) % 3);
    }

    friend BasicEis operator+(const BasicEis& x, const BasicEis& y) { return {x.a + y.a, x.b + y.b}; }
    friend BasicEis operator-(const BasicEis& x, const BasicEis& y) { return {x.a - y.a, x.b - y.b}; }
    friend BasicEis operator-(const BasicEis& x) { return {-x.a, -x.b}; }
    friend BasicEis operator*(const BasicEis& x, const BasicEis& y) {
        // w^2 = -1 - w
        I bb = x.b * y.b;
        return {x.a * y.a - bb, x.a * y.b + x.b * y.a - bb};
    }
    BasicEis& operator+=(const BasicEis& y) { return *this = *this + y; }
    BasicEis& operator-=(const BasicEis& y) { return *this = *this - y; }
    BasicEis& operator*=(const BasicEis& y) { return *this = *this * y; }
    friend bool operator==(const BasicEis& x, const BasicEis& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const BasicEis& x, const BasicEis& y) { return !(x == y); }
};

using EisInt = BasicEis<Int>;
using SmallEis = BasicEis<std::int64_t>;

inline Int eis_norm(const EisInt& x) { return x.norm(); }

namespace detail {
inline Int round_div(const Int& n, const Int& d) {
    // nearest integer to n/d, d > 0, ties toward +inf
    Int t = 2 * n + d;
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), t.get_mpz_t(), Int(2 * d).get_mpz_t());
    return q;
}
}  // namespace detail

// Euclidean division: x = q*d + r with norm(r) <= (3/4) norm(d).
inline std::pair<EisInt, EisInt> eis_divmod(const EisInt& x, const EisInt& d) {
    if (d.is_zero()) throw std::domain_error("zero divisor");
    EisInt num = x * d.conj();
    Int n = d.norm();
    EisInt q{detail::round_div(num.a, n), detail::round_div(num.b, n)};
    return {q, x - q * d};
}

inline bool divides_in_E(const EisInt& d, const EisInt& x) {
    if (d.is_zero()) throw std::domain_error("zero divisor");
    EisInt num = x * d.conj();
    Int n = d.norm();
    return mpz_divisible_p(num.a.get_mpz_t(), n.get_mpz_t()) &&
           mpz_divisible_p(num.b.get_mpz_t(), n.get_mpz_t());
}

inline EisInt exact_div(const EisInt& x, const EisInt& d) {
    if (!divides_in_E(d, x)) throw std::domain_error("inexact division in Z[w]");
    EisInt num = x * d.conj();
    Int n = d.norm();
    return {Int(num.a / n), Int(num.b / n)};
}

// ---------------------------------------------------------------------------
// a + b*sqrt3

struct RealQuad {
    Rat a{0};
    Rat b{0};

    RealQuad() = default;
    RealQuad(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {}
    // NOLINTNEXTLINE(google-explicit-constructor)
    RealQuad(long v) : a(v), b(0) {}
    // NOLINTNEXTLINE(google-explicit-constructor)
    RealQuad(const Rat& v) : a(v), b(0) {}

    static RealQuad r3() { return {Rat(0), Rat(1)}; }

    bool is_zero() const { return a == 0 && b == 0; }
    RealQuad galois() const { return {a, -b}; }
    Rat field_norm() const { return a * a - 3 * b * b; }
    RealQuad inverse() const {
        Rat n = field_norm();
        if (n == 0) throw std::domain_error("division by zero in Q(sqrt3)");
        return {a / n, -b / n};
    }

    friend RealQuad operator+(const RealQuad& x, const RealQuad& y) { return {x.a + y.a, x.b + y.b}; }
    friend RealQuad operator-(const RealQuad& x, const RealQuad& y) { return {x.a - y.a, x.b - y.b}; }
    friend RealQuad operator-(const RealQuad& x) { return {-x.a, -x.b}; }
    friend RealQuad operator*(const RealQuad& x, const RealQuad& y) {
        return {x.a * y.a + 3 * x.b * y.b, x.a * y.b + x.b * y.a};
    }
    friend RealQuad operator/(const RealQuad& x, const RealQuad& y) { return x * y.inverse(); }
    RealQuad& operator+=(const RealQuad& y) { return *this = *this + y; }
    RealQuad& operator-=(const RealQuad& y) { return *this = *this - y; }
    RealQuad& operator*=(const RealQuad& y) { return *this = *this * y; }
    friend bool operator==(const RealQuad& x, const RealQuad& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const RealQuad& x, const RealQuad& y) { return !(x == y); }
};

inline int sign_realquad(const RealQuad& x) {
    int sa = sgn(x.a), sb = sgn(x.b);
    if (sa == sb) return sa;
    if (sa == 0) return sb;
    if (sb == 0) return sa;
    return sa * sgn(Rat(x.a * x.a - 3 * x.b * x.b));
}

inline int cmp(const RealQuad& x, const RealQuad& y) { return sign_realquad(x - y); }
inline bool operator<(const RealQuad& x, const RealQuad& y) { return cmp(x, y) < 0; }
inline bool operator>(const RealQuad& x, const RealQuad& y) { return cmp(x, y) > 0; }
inline bool operator<=(const RealQuad& x, const RealQuad& y) { return cmp(x, y) <= 0; }
inline bool operator>=(const RealQuad& x, const RealQuad& y) { return cmp(x, y) >= 0; }

inline double to_double(const RealQuad& x) { return x.a.get_d() + x.b.get_d() * 1.7320508075688772; }

// ---------------------------------------------------------------------------
// c0 + c1*w + c2*sqrt3 + c3*w*sqrt3, stored as u + v*w with u, v in Q(sqrt3).

class CycScalar {
public:
    CycScalar() = default;
    // NOLINTNEXTLINE(google-explicit-constructor)
    CycScalar(long v) : u_(v) {}
    // NOLINTNEXTLINE(google-explicit-constructor)
    CycScalar(const Rat& v) : u_(v) {}
    // NOLINTNEXTLINE(google-explicit-constructor)
    CycScalar(const RealQuad& v) : u_(v) {}
    CycScalar(RealQuad u, RealQuad v) : u_(std::move(u)), v_(std::move(v)) {}
    CycScalar(Rat c0, Rat c1, Rat c2, Rat c3)
        : u_(std::move(c0), std::move(c2)), v_(std::move(c1), std::move(c3)) {}
    // NOLINTNEXTLINE(google-explicit-constructor)
    CycScalar(const EisInt& e) : u_(Rat(e.a)), v_(Rat(e.b)) {}

    static CycScalar w() { return {RealQuad(0), RealQuad(1)}; }
    static CycScalar wbar() { return {RealQuad(-1), RealQuad(-1)}; }
    static CycScalar theta() { return {RealQuad(1), RealQuad(2)}; }
    static CycScalar psi() { return {RealQuad(4), RealQuad(3)}; }
    static CycScalar psibar() { return {RealQuad(1), RealQuad(-3)}; }
    static CycScalar r3() { return CycScalar(RealQuad::r3()); }
    // i = theta / sqrt3 = (1 + 2w) sqrt3 / 3
    static CycScalar i() { return {RealQuad(0, make_rat(1, 3)), RealQuad(0, make_rat(2, 3))}; }

    const Rat& c0() const { return u_.a; }
    const Rat& c1() const { return v_.a; }
    const Rat& c2() const { return u_.b; }
    const Rat& c3() const { return v_.b; }
    const RealQuad& u() const { return u_; }
    const RealQuad& v() const { return v_; }

    bool is_zero() const { return u_.is_zero() && v_.is_zero(); }
    bool is_real() const { return v_.is_zero(); }
    bool in_Qw() const { return u_.b == 0 && v_.b == 0; }
    bool in_E() const { return in_Qw() && is_integral(u_.a) && is_integral(v_.a); }
    EisInt to_eis() const {
        if (!in_E()) throw std::domain_error("not an Eisenstein integer");
        return {u_.a.get_num(), v_.a.get_num()};
    }

    CycScalar conj() const { return {u_ - v_, -v_}; }
    // |z|^2, which lies in Q(sqrt3)
    RealQuad abs2() const { return u_ * u_ - u_ * v_ + v_ * v_; }
    RealQuad re() const { return u_ - v_ * RealQuad(make_rat(1, 2)); }
    // coefficient y in z = x + y*i
    RealQuad im() const { return v_ * RealQuad(0, make_rat(1, 2)); }
    // for real z
    const RealQuad& real_value() const {
        if (!is_real()) throw std::domain_error("value is not real");
        return u_;
    }
    CycScalar inverse() const {
        RealQuad n = abs2();
        if (n.is_zero()) throw std::domain_error("division by zero");
        RealQuad ni = n.inverse();
        CycScalar c = conj();
        return {c.u_ * ni, c.v_ * ni};
    }

    friend CycScalar operator+(const CycScalar& x, const CycScalar& y) { return {x.u_ + y.u_, x.v_ + y.v_}; }
    friend CycScalar operator-(const CycScalar& x, const CycScalar& y) { return {x.u_ - y.u_, x.v_ - y.v_}; }
    friend CycScalar operator-(const CycScalar& x) { return {-x.u_, -x.v_}; }
    friend CycScalar operator*(const CycScalar& x, const CycScalar& y) {
        RealQuad vv = x.v_ * y.v_;
        return {x.u_ * y.u_ - vv, x.u_ * y.v_ + x.v_ * y.u_ - vv};
    }
    friend CycScalar operator/(const CycScalar& x, const CycScalar& y) { return x * y.inverse(); }
    CycScalar& operator+=(const CycScalar& y) { return *this = *this + y; }
    CycScalar& operator-=(const CycScalar& y) { return *this = *this - y; }
    CycScalar& operator*=(const CycScalar& y) { return *this = *this * y; }
    friend bool operator==(const CycScalar& x, const CycScalar& y) { return x.u_ == y.u_ && x.v_ == y.v_; }
    friend bool operator!=(const CycScalar& x, const CycScalar& y) { return !(x == y); }

private:
    RealQuad u_;
    RealQuad v_;
};

inline std::pair<RealQuad, RealQuad> re_im(const CycScalar& z) { return {z.re(), z.im()}; }

// Shorthand constants.
inline CycScalar W() { return CycScalar::w(); }
inline CycScalar Wb() { return CycScalar::wbar(); }
inline CycScalar Th() { return CycScalar::theta(); }
inline CycScalar Thb() { return -CycScalar::theta(); }
inline CycScalar Psi() { return CycScalar::psi(); }
inline CycScalar Psib() { return CycScalar::psibar(); }
inline CycScalar R3() { return CycScalar::r3(); }
inline CycScalar Q(long p, long q = 1) { return CycScalar(make_rat(p, q)); }

// Sixth roots of unity, in the order 1, -wbar, w, -1, wbar, -w (powers of -wbar).
inline const CycScalar& unit6(int k) {
    static const CycScalar u[6] = {Q(1), -Wb(), W(), Q(-1), Wb(), -W()};
    return u[((k % 6) + 6) % 6];
}

// ---------------------------------------------------------------------------
// Canonical text "a + b*w + c*r3 + d*w*r3": zero terms omitted, unit
// coefficients written bare, "0" for zero.

inline std::string render(const CycScalar& z) {
    static const char* const names[4] = {"", "w", "r3", "w*r3"};
    const Rat* cs[4] = {&z.c0(), &z.c1(), &z.c2(), &z.c3()};
    std::string out;
    for (int k = 0; k < 4; ++k) {
        const Rat& c = *cs[k];
        if (c == 0) continue;
        bool neg = c < 0;
        Rat m = neg ? Rat(-c) : c;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (k == 0) {
            out += m.get_str();
        } else if (m == 1) {
            out += names[k];
        } else {
            out += m.get_str();
            out += "*";
            out += names[k];
        }
    }
    return out.empty() ? "0" : out;
}

inline std::string render(const RealQuad& x) { return render(CycScalar(x)); }

inline CycScalar parse_cyc(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty scalar text");
    Rat c[4] = {0, 0, 0, 0};
    std::size_t pos = 0;
    bool first = true;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            throw std::invalid_argument("expected sign in scalar text");
        }
        first = false;
        std::size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        std::string term = s.substr(pos, end - pos);
        pos = end;
        if (term.empty()) throw std::invalid_argument("empty term in scalar text");
        std::string coef, basis;
        std::size_t star = term.find('*');
        if (!term.empty() && (std::isdigit(static_cast<unsigned char>(term[0])))) {
            if (star == std::string::npos) {
                coef = term;
            } else {
                coef = term.substr(0, star);
                basis = term.substr(star + 1);
            }
        } else {
            coef = "1";
            basis = term;
        }
        int k;
        if (basis.empty()) k = 0;
        else if (basis == "w") k = 1;
        else if (basis == "r3") k = 2;
        else if (basis == "w*r3" || basis == "r3*w") k = 3;
        else throw std::invalid_argument("unknown basis element '" + basis + "'");
        Rat r;
        if (r.set_str(coef, 10) != 0) throw std::invalid_argument("bad rational '" + coef + "'");
        if (r.get_den() == 0) throw std::invalid_argument("zero denominator");
        r.canonicalize();
        c[k] += sign * r;
    }
    return {c[0], c[1], c[2], c[3]};
}

inline std::ostream& operator<<(std::ostream& os, const CycScalar& z) { return os << render(z); }
inline std::ostream& operator<<(std::ostream& os, const RealQuad& z) { return os << render(z); }
template <class I>
std::ostream& operator<<(std::ostream& os, const BasicEis<I>& e) {
    return os << render(CycScalar(Rat(Int(e.a)), Rat(Int(e.b)), Rat(0), Rat(0)));
}

}  // namespace mirrorcert
