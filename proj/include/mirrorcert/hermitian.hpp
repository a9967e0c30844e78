#pragma once
// Hermitian vectors and forms over Q(w, sqrt3); Gram determinants; Smith form over Z[w].

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mirrorcert/scalars.hpp"

namespace mirrorcert {

enum class Model { P2F3, LeechModel, LambdaStd, D4E, ESuper, Plain };

inline const char* model_name(Model m) {
    switch (m) {
        case Model::P2F3: return "P2F3";
        case Model::LeechModel: return "LeechModel";
        case Model::LambdaStd: return "LambdaStd";
        case Model::D4E: return "D4E";
        case Model::ESuper: return "ESuper";
        case Model::Plain: return "Plain";
    }
    return "?";
}

// Forms are linear in the first argument and antilinear in the second.
class HermForm {
public:
    HermForm(Model tag, std::size_t dim, std::vector<CycScalar> gram) : tag_(tag), dim_(dim), gram_(std::move(gram)) {
        if (gram_.size() != dim_ * dim_) throw std::invalid_argument("gram size mismatch");
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) {
                if (at(i, j) != at(j, i).conj()) throw std::invalid_argument("gram is not hermitian");
                if (!at(i, j).is_zero()) entries_.push_back({i, j, at(i, j)});
            }
    }

    Model tag() const { return tag_; }
    std::size_t dim() const { return dim_; }
    const CycScalar& at(std::size_t i, std::size_t j) const { return gram_[i * dim_ + j]; }

    CycScalar eval(const std::vector<CycScalar>& v, const std::vector<CycScalar>& w) const {
        CycScalar acc;
        for (const auto& e : entries_) {
            if (v[e.i].is_zero() || w[e.j].is_zero()) continue;
            acc += v[e.i] * e.g * w[e.j].conj();
        }
        return acc;
    }

private:
    struct Entry {
        std::size_t i, j;
        CycScalar g;
    };
    Model tag_;
    std::size_t dim_;
    std::vector<CycScalar> gram_;
    std::vector<Entry> entries_;
};

using FormPtr = std::shared_ptr<const HermForm>;

inline FormPtr make_diag_form(Model tag, const std::vector<CycScalar>& diag) {
    std::size_t n = diag.size();
    std::vector<CycScalar> g(n * n);
    for (std::size_t i = 0; i < n; ++i) g[i * n + i] = diag[i];
    return std::make_shared<const HermForm>(tag, n, std::move(g));
}

// diag(-1, 1^13)
inline const FormPtr& form_P2F3() {
    static const FormPtr f = [] {
        std::vector<CycScalar> d(14, Q(1));
        d[0] = Q(-1);
        return make_diag_form(Model::P2F3, d);
    }();
    return f;
}

// [[0, thetabar], [theta, 0]]
inline const FormPtr& form_ESuper() {
    static const FormPtr f =
        std::make_shared<const HermForm>(Model::ESuper, 2, std::vector<CycScalar>{Q(0), Thb(), Th(), Q(0)});
    return f;
}

inline FormPtr form_plain(std::size_t n) { return make_diag_form(Model::Plain, std::vector<CycScalar>(n, Q(1))); }

class HermVec {
public:
    HermVec() = default;
    HermVec(FormPtr form, std::vector<CycScalar> coords) : form_(std::move(form)), c_(std::move(coords)) {
        if (!form_ || c_.size() != form_->dim()) throw std::invalid_argument("coordinate count does not match form");
    }
    static HermVec zero(const FormPtr& form) { return HermVec(form, std::vector<CycScalar>(form->dim())); }
    static HermVec unit(const FormPtr& form, std::size_t k) {
        HermVec v = zero(form);
        v.c_.at(k) = Q(1);
        return v;
    }

    const FormPtr& form() const { return form_; }
    std::size_t size() const { return c_.size(); }
    const CycScalar& operator[](std::size_t k) const { return c_[k]; }
    CycScalar& operator[](std::size_t k) { return c_[k]; }
    const std::vector<CycScalar>& coords() const { return c_; }
    bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }
    bool integral() const {
        for (const auto& x : c_)
            if (!x.in_E()) return false;
        return true;
    }

    friend HermVec operator+(const HermVec& x, const HermVec& y) {
        check_same(x, y);
        HermVec r = x;
        for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] += y.c_[k];
        return r;
    }
    friend HermVec operator-(const HermVec& x, const HermVec& y) {
        check_same(x, y);
        HermVec r = x;
        for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] -= y.c_[k];
        return r;
    }
    friend HermVec operator-(const HermVec& x) {
        HermVec r = x;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    friend HermVec operator*(const CycScalar& a, const HermVec& x) {
        HermVec r = x;
        for (auto& c : r.c_)
            if (!c.is_zero()) c = a * c;
        return r;
    }
    friend HermVec operator/(const HermVec& x, const CycScalar& a) { return a.inverse() * x; }
    HermVec& operator+=(const HermVec& y) { return *this = *this + y; }
    HermVec& operator-=(const HermVec& y) { return *this = *this - y; }
    friend bool operator==(const HermVec& x, const HermVec& y) { return x.form_ == y.form_ && x.c_ == y.c_; }
    friend bool operator!=(const HermVec& x, const HermVec& y) { return !(x == y); }

    static void check_same(const HermVec& x, const HermVec& y) {
        if (x.form_ != y.form_) throw std::invalid_argument("vectors carry different forms");
    }

private:
    FormPtr form_;
    std::vector<CycScalar> c_;
};

struct Root {
    HermVec vec;
    std::optional<int> shell;
    std::optional<int> batch;
};

inline CycScalar inner(const HermVec& v, const HermVec& w) {
    HermVec::check_same(v, w);
    return v.form()->eval(v.coords(), w.coords());
}

inline RealQuad norm(const HermVec& v) { return inner(v, v).real_value(); }

inline void require_root(const HermVec& s) {
    if (norm(s) != RealQuad(3)) throw std::domain_error("not a root");
}

// x - (1 - w) <x,s>/s^2 s
inline HermVec reflect_omega(const HermVec& s, const HermVec& x) {
    require_root(s);
    CycScalar c = (Q(1) - W()) * inner(x, s) * Q(1, 3);
    return x - c * s;
}

inline HermVec reflect_omega_inv(const HermVec& s, const HermVec& x) {
    require_root(s);
    CycScalar c = (Q(1) - Wb()) * inner(x, s) * Q(1, 3);
    return x - c * s;
}

// b - <b,s>/s^2 s for any non-null s.
inline HermVec project_orthogonal(const HermVec& b, const HermVec& s) {
    RealQuad n = norm(s);
    if (n.is_zero()) throw std::domain_error("projection along a null vector");
    return b - (inner(b, s) / CycScalar(n)) * s;
}

inline HermVec project_to_mirror(const HermVec& b, const HermVec& s) {
    require_root(s);
    return project_orthogonal(b, s);
}

// ---------------------------------------------------------------------------
// Dense matrices over Q(w, sqrt3), acting on coordinate columns.

class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c) {}
    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Q(1);
        return m;
    }
    static CMatrix from_columns(const std::vector<HermVec>& cols) {
        CMatrix m(cols.empty() ? 0 : cols[0].size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < m.r_; ++i) m(i, j) = cols[j][i];
        return m;
    }
    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    CycScalar& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const CycScalar& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    friend CMatrix operator*(const CMatrix& x, const CMatrix& y) {
        if (x.c_ != y.r_) throw std::invalid_argument("matrix shape mismatch");
        CMatrix m(x.r_, y.c_);
        for (std::size_t i = 0; i < x.r_; ++i)
            for (std::size_t k = 0; k < x.c_; ++k) {
                const CycScalar& a = x(i, k);
                if (a.is_zero()) continue;
                for (std::size_t j = 0; j < y.c_; ++j)
                    if (!y(k, j).is_zero()) m(i, j) += a * y(k, j);
            }
        return m;
    }
    friend CMatrix operator*(const CycScalar& s, const CMatrix& x) {
        CMatrix m = x;
        for (auto& e : m.a_) e = s * e;
        return m;
    }
    friend bool operator==(const CMatrix& x, const CMatrix& y) { return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_; }
    friend bool operator!=(const CMatrix& x, const CMatrix& y) { return !(x == y); }

    HermVec apply(const HermVec& v, const FormPtr& target) const {
        if (v.size() != c_ || target->dim() != r_) throw std::invalid_argument("matrix/vector shape mismatch");
        std::vector<CycScalar> out(r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j)
                if (!v[j].is_zero() && !(*this)(i, j).is_zero()) out[i] += (*this)(i, j) * v[j];
        return HermVec(target, std::move(out));
    }
    HermVec apply(const HermVec& v) const { return apply(v, v.form()); }

    // Gauss-Jordan; throws on singular input.
    CMatrix inverse() const {
        if (r_ != c_) throw std::invalid_argument("inverse of non-square matrix");
        std::size_t n = r_;
        CMatrix a = *this, inv = identity(n);
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            while (piv < n && a(piv, col).is_zero()) ++piv;
            if (piv == n) throw std::domain_error("singular matrix");
            if (piv != col)
                for (std::size_t j = 0; j < n; ++j) {
                    std::swap(a(piv, j), a(col, j));
                    std::swap(inv(piv, j), inv(col, j));
                }
            CycScalar p = a(col, col).inverse();
            for (std::size_t j = 0; j < n; ++j) {
                a(col, j) = a(col, j) * p;
                inv(col, j) = inv(col, j) * p;
            }
            for (std::size_t i = 0; i < n; ++i) {
                if (i == col || a(i, col).is_zero()) continue;
                CycScalar f = a(i, col);
                for (std::size_t j = 0; j < n; ++j) {
                    if (!a(col, j).is_zero()) a(i, j) -= f * a(col, j);
                    if (!inv(col, j).is_zero()) inv(i, j) -= f * inv(col, j);
                }
            }
        }
        return inv;
    }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<CycScalar> a_;
};

// True iff M preserves the hermitian form on the given vectors (pairwise).
inline bool preserves_form(const CMatrix& m, const std::vector<HermVec>& vs) {
    std::vector<HermVec> img;
    img.reserve(vs.size());
    for (const auto& v : vs) img.push_back(m.apply(v));
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i; j < vs.size(); ++j)
            if (inner(img[i], img[j]) != inner(vs[i], vs[j])) return false;
    return true;
}

// Fraction-free (Bareiss) determinant.
inline CycScalar det_bareiss(std::vector<std::vector<CycScalar>> a) {
    std::size_t n = a.size();
    if (n == 0) return Q(1);
    CycScalar prev = Q(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && a[p][k].is_zero()) ++p;
            if (p == n) return Q(0);
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        CycScalar prev_inv = prev.inverse();
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) * prev_inv;
            a[i][k] = Q(0);
        }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

inline std::vector<std::vector<CycScalar>> gram_matrix(const std::vector<HermVec>& vs) {
    std::vector<std::vector<CycScalar>> g(vs.size(), std::vector<CycScalar>(vs.size()));
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i; j < vs.size(); ++j) {
            g[i][j] = inner(vs[i], vs[j]);
            g[j][i] = g[i][j].conj();
        }
    return g;
}

inline CycScalar gram_det(const std::vector<HermVec>& vs) {
    for (std::size_t k = 1; k < vs.size(); ++k) HermVec::check_same(vs[0], vs[k]);
    return det_bareiss(gram_matrix(vs));
}

// ---------------------------------------------------------------------------
// Modules over Z[w]: echelon form, membership, Smith normal form.

using EisRow = std::vector<EisInt>;

inline EisRow to_eis_row(const HermVec& v) {
    EisRow r;
    r.reserve(v.size());
    for (const auto& c : v.coords()) {
        if (!c.in_E()) throw std::domain_error("non-integral entry");
        r.push_back(c.to_eis());
    }
    return r;
}

inline HermVec from_eis_row(const FormPtr& f, const EisRow& r) {
    std::vector<CycScalar> c;
    c.reserve(r.size());
    for (const auto& e : r) c.emplace_back(e);
    return HermVec(f, std::move(c));
}

namespace detail {
inline bool row_is_zero(const EisRow& r) {
    for (const auto& e : r)
        if (!e.is_zero()) return false;
    return true;
}
inline void axpy(EisRow& y, const EisInt& a, const EisRow& x) {
    if (a.is_zero()) return;
    for (std::size_t k = 0; k < y.size(); ++k)
        if (!x[k].is_zero()) y[k] -= a * x[k];
}
}  // namespace detail

// Row echelon form by unimodular row operations; zero rows dropped.
// Pivot choice: minimal norm, ties to the lowest row index.
inline std::vector<EisRow> echelon(std::vector<EisRow> rows) {
    std::vector<EisRow> out;
    if (rows.empty()) return out;
    std::size_t ncol = rows[0].size();
    std::size_t top = 0;
    for (std::size_t col = 0; col < ncol && top < rows.size(); ++col) {
        for (;;) {
            std::size_t piv = rows.size();
            for (std::size_t i = top; i < rows.size(); ++i) {
                if (rows[i][col].is_zero()) continue;
                if (piv == rows.size() || rows[i][col].norm() < rows[piv][col].norm()) piv = i;
            }
            if (piv == rows.size()) break;
            std::swap(rows[top], rows[piv]);
            bool clean = true;
            for (std::size_t i = top + 1; i < rows.size(); ++i) {
                if (rows[i][col].is_zero()) continue;
                auto [q, r] = eis_divmod(rows[i][col], rows[top][col]);
                detail::axpy(rows[i], q, rows[top]);
                if (!r.is_zero()) clean = false;
            }
            if (clean) {
                ++top;
                break;
            }
        }
    }
    for (auto& r : rows)
        if (!detail::row_is_zero(r)) out.push_back(std::move(r));
    return out;
}

inline bool span_contains(const std::vector<EisRow>& ech, EisRow v) {
    for (const auto& row : ech) {
        std::size_t p = 0;
        while (p < row.size() && row[p].is_zero()) ++p;
        if (p == row.size()) continue;
        if (v[p].is_zero()) continue;
        if (!divides_in_E(row[p], v[p])) return false;
        detail::axpy(v, exact_div(v[p], row[p]), row);
    }
    return detail::row_is_zero(v);
}

inline std::vector<EisInt> smith_divisors(std::vector<EisRow> a) {
    std::vector<EisInt> divs;
    if (a.empty()) return divs;
    std::size_t m = a.size(), n = a[0].size();
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // minimal-norm nonzero entry of the trailing block
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (!a[i][j].is_zero() && (pi == m || a[i][j].norm() < a[pi][pj].norm())) {
                        pi = i;
                        pj = j;
                    }
            if (pi == m) return divs;
            std::swap(a[t], a[pi]);
            for (std::size_t i = 0; i < m; ++i) std::swap(a[i][t], a[i][pj]);
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a[i][t].is_zero()) continue;
                auto [q, r] = eis_divmod(a[i][t], a[t][t]);
                detail::axpy(a[i], q, a[t]);
                if (!r.is_zero()) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a[t][j].is_zero()) continue;
                auto [q, r] = eis_divmod(a[t][j], a[t][t]);
                for (std::size_t i = t; i < m; ++i)
                    if (!a[i][t].is_zero()) a[i][j] -= q * a[i][t];
                if (!r.is_zero()) clean = false;
            }
            if (!clean) continue;
            // pivot must divide the whole trailing block
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!divides_in_E(a[t][t], a[i][j])) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            for (std::size_t j = t; j < n; ++j) a[t][j] += a[bad][j];
        }
        divs.push_back(a[t][t]);
    }
    return divs;
}

struct SpanResult {
    std::size_t rank = 0;
    std::vector<EisInt> divisors;
    std::vector<HermVec> basis;
    std::vector<EisRow> echelon_rows;
};

inline SpanResult snf_span(const std::vector<HermVec>& gens) {
    SpanResult res;
    if (gens.empty()) return res;
    std::vector<EisRow> rows;
    for (const auto& g : gens) {
        HermVec::check_same(gens[0], g);
        rows.push_back(to_eis_row(g));
    }
    res.echelon_rows = echelon(rows);
    res.rank = res.echelon_rows.size();
    res.divisors = smith_divisors(rows);
    for (const auto& r : res.echelon_rows) res.basis.push_back(from_eis_row(gens[0].form(), r));
    return res;
}

inline bool is_unit(const EisInt& e) { return e.norm() == 1; }

inline bool divisible_by_theta(const CycScalar& x) {
    return x.in_E() && divides_in_E(EisInt::theta(), x.to_eis());
}

// All pairwise inner products divisible by theta and |det| = 3^(n/2).
inline bool theta_dual_check(const std::vector<HermVec>& basis) {
    std::size_t n = basis.size();
    if (n == 0 || n % 2 != 0) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (!divisible_by_theta(inner(basis[i], basis[j]))) return false;
    CycScalar d = gram_det(basis);
    if (!d.is_real()) return false;
    RealQuad ad = sign_realquad(d.real_value()) < 0 ? -d.real_value() : d.real_value();
    Int p;
    mpz_ui_pow_ui(p.get_mpz_t(), 3, n / 2);
    return ad == RealQuad(Rat(p));
}

}  // namespace mirrorcert
