#pragma once
// Finite enumerations: batch roots around p_inf, short vectors of rank-2
// Eisenstein lattices, and complete closest-vector enumeration.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "mirrorcert/hypgeom.hpp"
#include "mirrorcert/leech.hpp"

namespace mirrorcert {

using SmallRoot = std::array<SmallEis, 14>;

struct BatchParams {
    int N;  // sum of |s_i|^2 over i >= 1
    int S;  // required coordinate sum of the codeword
    std::vector<SmallEis> s0;
};

inline const BatchParams& batch_params(int b) {
    static const BatchParams table[6] = {
        {3, 0, {SmallEis(0, 0)}},
        {4, 1, {SmallEis(1, 0)}},
        {6, 0, {SmallEis(1, 2)}},                   // theta
        {7, 1, {SmallEis(-2, 0)}},
        {10, 1, {SmallEis(2, -1), SmallEis(3, 1)}},  // 2 - w, 2 - wbar
        {12, 0, {SmallEis(3, 0)}},
    };
    if (b < 0 || b > 5) throw std::out_of_range("batch not parameterized by the construction (0..5)");
    return table[b];
}

// Elements of Z[w] of norm n with residue r mod theta, sorted by (a, b).
inline const std::vector<SmallEis>& eis_of_norm(int n, int r) {
    static const auto table = [] {
        std::array<std::array<std::vector<SmallEis>, 3>, 13> t;
        for (long a = -4; a <= 4; ++a)
            for (long b = -4; b <= 4; ++b) {
                long nn = a * a - a * b + b * b;
                if (nn > 12) continue;
                SmallEis e(a, b);
                t[nn][e.mod_theta()].push_back(e);
            }
        return t;
    }();
    if (n < 0 || n > 12 || r < 0 || r > 2) throw std::out_of_range("norm/residue outside the tabulated range");
    return table[n][r];
}

inline SmallEis small_unit(int k) {
    static const SmallEis u[6] = {SmallEis(1, 0), SmallEis(1, 1), SmallEis(0, 1),
                                  SmallEis(-1, 0), SmallEis(-1, -1), SmallEis(0, -1)};
    return u[((k % 6) + 6) % 6];
}

inline HermVec to_hermvec(const SmallRoot& r) {
    std::vector<CycScalar> c;
    c.reserve(14);
    for (const auto& e : r) c.emplace_back(EisInt(Int(e.a), Int(e.b)));
    return HermVec(form_P2F3(), std::move(c));
}

inline std::string render_root(const SmallRoot& r) {
    std::string s = "(";
    for (int k = 0; k < 14; ++k) {
        if (k == 1) s += ";";
        else if (k > 1) s += ",";
        s += render(CycScalar(EisInt(Int(r[k].a), Int(r[k].b))));
    }
    return s + ")";
}

// Codewords admissible for batch b, in canonical order.
inline const std::vector<Word>& batch_codewords(int b) {
    static const auto table = [] {
        std::array<std::vector<Word>, 6> t;
        for (int bb = 0; bb < 6; ++bb) {
            const BatchParams& p = batch_params(bb);
            for (const auto& w : line_code().words())
                if (word_weight(w) <= p.N && word_sum(w) == p.S) t[bb].push_back(w);
        }
        return t;
    }();
    batch_params(b);
    return table[b];
}

// Exponent vectors e with e_i in {0,3,6} off the zero set of w, {0,3,9,12}
// on it, summing to N - weight(w); lexicographic order.
inline std::vector<std::array<std::int8_t, 13>> compositions(const Word& w, int total) {
    std::vector<std::array<std::int8_t, 13>> out;
    std::array<std::int8_t, 13> cur{};
    static const int on[3] = {0, 3, 6};
    static const int off[4] = {0, 3, 9, 12};
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == 13) {
            if (left == 0) out.push_back(cur);
            return;
        }
        const int* opts = w[pos] ? on : off;
        int nopt = w[pos] ? 3 : 4;
        for (int k = 0; k < nopt; ++k) {
            if (opts[k] > left) break;
            cur[pos] = static_cast<std::int8_t>(opts[k]);
            self(self, pos + 1, left - opts[k]);
        }
        cur[pos] = 0;
    };
    int r = total - word_weight(w);
    if (r >= 0) rec(rec, 0, r);
    return out;
}

// Number of roots a codeword contributes (used only for load balancing).
inline std::uint64_t codeword_weight(int b, const Word& w, bool all_units) {
    const BatchParams& p = batch_params(b);
    std::uint64_t total = 0;
    for (const auto& e : compositions(w, p.N)) {
        std::uint64_t prod = 1;
        for (int i = 0; i < 13; ++i) {
            int n = w[i] ? e[i] + 1 : e[i];
            prod *= eis_of_norm(n, w[i]).size();
        }
        total += prod;
    }
    total *= p.s0.size();
    if (b == 0 && !all_units) total /= 6;
    if (b > 0 && all_units) total *= 6;
    return total;
}

// Streams the batch-b roots whose codeword lies in [begin, end) of
// batch_codewords(b). One root per scalar class unless all_units is set.
class BatchStream {
public:
    BatchStream(int b, std::size_t begin, std::size_t end, bool all_units = false)
        : b_(b), end_(std::min(end, batch_codewords(b).size())), all_units_(all_units), cw_(begin),
          params_(&batch_params(b)) {
        seek_codeword();
    }
    explicit BatchStream(int b, bool all_units = false) : BatchStream(b, 0, batch_codewords(b).size(), all_units) {}

    int batch() const { return b_; }
    // Codeword index of the next root; resuming from here repeats nothing.
    std::size_t cursor() const { return cw_; }
    bool done() const { return !valid_; }

    bool next(SmallRoot& out) {
        if (!valid_) return false;
        build(out);
        advance();
        return true;
    }

    // Calls f(root) for every remaining root whose codeword index is < stop.
    template <class F>
    void drain_until(std::size_t stop, F&& f) {
        SmallRoot r;
        while (valid_ && cw_ < stop) {
            build(r);
            f(r);
            advance();
        }
    }

    std::uint64_t count() {
        std::uint64_t n = 0;
        drain_until(end_, [&](const SmallRoot&) { ++n; });
        return n;
    }

private:
    void build(SmallRoot& out) const {
        out.fill(SmallEis(0, 0));
        SmallEis u = small_unit(unit_);
        out[0] = params_->s0[s0_] * u;
        for (std::size_t m = 0; m < pos_.size(); ++m) out[1 + pos_[m]] = (*lists_[m])[idx_[m]] * u;
    }

    void setup_comp() {
        const Word& w = batch_codewords(b_)[cw_];
        const auto& e = comps_[comp_];
        pos_.clear();
        lists_.clear();
        for (int i = 0; i < 13; ++i) {
            int n = w[i] ? e[i] + 1 : e[i];
            if (n == 0) continue;
            pos_.push_back(i);
            if (b_ == 0 && !all_units_) {
                static const std::vector<SmallEis> theta_only{SmallEis(1, 2)};
                lists_.push_back(&theta_only);
            } else {
                lists_.push_back(&eis_of_norm(n, w[i]));
            }
        }
        idx_.assign(pos_.size(), 0);
        s0_ = 0;
        unit_ = 0;
    }

    void seek_codeword() {
        valid_ = false;
        while (cw_ < end_) {
            comps_ = compositions(batch_codewords(b_)[cw_], params_->N);
            comp_ = 0;
            if (!comps_.empty()) {
                setup_comp();
                valid_ = true;
                return;
            }
            ++cw_;
        }
    }

    void advance() {
        if (all_units_ && b_ > 0 && ++unit_ < 6) return;
        unit_ = 0;
        if (++s0_ < params_->s0.size()) return;
        s0_ = 0;
        for (std::size_t m = pos_.size(); m-- > 0;) {
            if (++idx_[m] < lists_[m]->size()) return;
            idx_[m] = 0;
        }
        if (++comp_ < comps_.size()) {
            setup_comp();
            return;
        }
        ++cw_;
        seek_codeword();
    }

    int b_;
    std::size_t end_;
    bool all_units_;
    std::size_t cw_;
    const BatchParams* params_;
    bool valid_ = false;
    std::vector<std::array<std::int8_t, 13>> comps_;
    std::size_t comp_ = 0;
    std::vector<int> pos_;
    std::vector<const std::vector<SmallEis>*> lists_;
    std::vector<std::size_t> idx_;
    std::size_t s0_ = 0;
    int unit_ = 0;
};

inline BatchStream enumerate_batch(int b, bool all_units = false) { return BatchStream(b, all_units); }

struct CodewordRange {
    std::size_t begin = 0, end = 0;
};

// k contiguous codeword ranges of roughly equal root count.
inline std::vector<CodewordRange> partition_batch(int b, std::size_t k, bool all_units = false) {
    if (k == 0) throw std::invalid_argument("partition count must be positive");
    const auto& words = batch_codewords(b);
    std::vector<std::uint64_t> wt;
    std::uint64_t total = 0;
    for (const auto& w : words) {
        wt.push_back(codeword_weight(b, w, all_units));
        total += wt.back();
    }
    std::vector<CodewordRange> out;
    std::size_t pos = 0;
    std::uint64_t acc = 0;
    for (std::size_t part = 0; part < k; ++part) {
        CodewordRange r;
        r.begin = pos;
        std::uint64_t target = total / k * (part + 1) + (part + 1 == k ? total % k : 0);
        while (pos < words.size() && (acc < target || part + 1 == k)) acc += wt[pos++];
        r.end = pos;
        out.push_back(r);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Integer inner products against fixed vertex vectors of the 14-coordinate model.

struct SmallVertex {
    std::array<SmallEis, 14> c;  // coordinates scaled to Z[w]
};

// Scales each vertex by a positive integer so its coordinates lie in Z[w].
inline SmallVertex to_small_vertex(const HermVec& v) {
    Int den = 1;
    for (const auto& c : v.coords()) {
        if (!c.in_Qw()) throw std::domain_error("vertex outside Q(w)");
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.c0().get_den_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.c1().get_den_mpz_t());
    }
    SmallVertex out;
    for (int k = 0; k < 14; ++k) {
        Rat a = v[k].c0() * Rat(den), b = v[k].c1() * Rat(den);
        if (!a.get_num().fits_slong_p() || !b.get_num().fits_slong_p() || abs(a.get_num()) > (Int(1) << 40) ||
            abs(b.get_num()) > (Int(1) << 40))
            throw std::overflow_error("vertex coordinates too large for the integer scan");
        out.c[k] = SmallEis(a.get_num().get_si(), b.get_num().get_si());
    }
    return out;
}

// <v, s> for the diag(-1, 1^13) form
inline SmallEis small_inner(const SmallVertex& v, const SmallRoot& s) {
    SmallEis acc = -(v.c[0] * s[0].conj());
    for (int k = 1; k < 14; ++k)
        if (s[k].a != 0 || s[k].b != 0) acc += v.c[k] * s[k].conj();
    return acc;
}

inline OriginHit small_triangle_hit(const std::array<SmallVertex, 3>& t, const SmallRoot& s) {
    return origin_support(small_inner(t[0], s), small_inner(t[1], s), small_inner(t[2], s));
}

// ---------------------------------------------------------------------------
// Short vectors a b1 + c b2 (a, c in Z[w]) of norm <= radius2.

namespace detail {
inline std::vector<std::vector<Rat>> rat_inverse(std::vector<std::vector<Rat>> a) {
    std::size_t n = a.size();
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && a[p][col] == 0) ++p;
        if (p == n) throw std::domain_error("singular rational matrix");
        std::swap(a[p], a[col]);
        std::swap(inv[p], inv[col]);
        Rat f = 1 / a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] *= f;
            inv[col][j] *= f;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0) continue;
            Rat g = a[i][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= g * a[col][j];
                inv[i][j] -= g * inv[col][j];
            }
        }
    }
    return inv;
}

inline long floor_sqrt_bound(const Rat& x) {
    // an integer >= sqrt(x)
    double d = std::sqrt(std::max(0.0, x.get_d()));
    long r = static_cast<long>(std::ceil(d)) + 1;
    while (Rat(r) * Rat(r) < x) ++r;
    return r;
}
}  // namespace detail

inline std::vector<HermVec> short_vectors_rank2(const HermVec& b1, const HermVec& b2, const Rat& radius2) {
    std::vector<HermVec> basis = {b1, W() * b1, b2, W() * b2};
    std::vector<std::vector<Rat>> g(4, std::vector<Rat>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            RealQuad r = inner(basis[i], basis[j]).re();
            if (r.b != 0) throw std::domain_error("real Gram outside Q");
            g[i][j] = r.a;
        }
    auto gi = detail::rat_inverse(g);
    long bound[4];
    for (int i = 0; i < 4; ++i) bound[i] = detail::floor_sqrt_bound(radius2 * gi[i][i]);
    std::vector<HermVec> out;
    for (long a0 = -bound[0]; a0 <= bound[0]; ++a0)
        for (long a1 = -bound[1]; a1 <= bound[1]; ++a1)
            for (long c0 = -bound[2]; c0 <= bound[2]; ++c0)
                for (long c1 = -bound[3]; c1 <= bound[3]; ++c1) {
                    long n[4] = {a0, a1, c0, c1};
                    Rat q(0);
                    for (int i = 0; i < 4; ++i)
                        for (int j = 0; j < 4; ++j)
                            if (n[i] && n[j]) q += g[i][j] * n[i] * n[j];
                    if (q > radius2) continue;
                    CycScalar ca = Q(a0) + Q(a1) * W(), cc = Q(c0) + Q(c1) * W();
                    out.push_back(ca * b1 + cc * b2);
                }
    return out;
}

// theta (D4^E)^* inside span(x, y): basis (theta x + y)/2, (theta y - x)/2.
inline std::vector<HermVec> enumerate_Sxy(const HermVec& x, const HermVec& y, const Rat& radius2 = Rat(27, 2)) {
    HermVec b1 = Q(1, 2) * (Th() * x + y), b2 = Q(1, 2) * (Th() * y - x);
    return short_vectors_rank2(b1, b2, radius2);
}

// s + t q with t chosen so that <s + t q, rho> hits each target in turn.
inline std::vector<HermVec> enumerate_Sqxy(const std::vector<HermVec>& sxy, const HermVec& q, const HermVec& rho) {
    const CycScalar targets[3] = {Thb(), Q(3), Q(2) * Thb()};
    CycScalar qr = inner(q, rho);
    if (qr.is_zero()) throw std::domain_error("q is orthogonal to rho");
    std::vector<HermVec> out;
    out.reserve(sxy.size() * 3);
    for (const auto& s : sxy)
        for (const auto& tg : targets) out.push_back(s + ((tg - inner(s, rho)) / qr) * q);
    return out;
}

// ---------------------------------------------------------------------------
// Closest-vector enumeration in a 12-dimensional Eisenstein lattice viewed as
// a 24-dimensional real lattice.

struct CvpHit {
    HermVec v;
    Rat dist2;
};

struct CvpStats {
    std::uint64_t nodes = 0;
    std::uint64_t float_candidates = 0;
    int retries = 0;
    double slack = 0;
    double error_bound = 0;
};

class CvpEngine {
public:
    explicit CvpEngine(ZBasis zb, double delta = 0.99) : zb_(std::move(zb)) {
        n_ = zb_.dim();
        G_ = zb_.gram;
        U_.assign(n_, std::vector<Int>(n_, Int(0)));
        for (std::size_t i = 0; i < n_; ++i) U_[i][i] = 1;
        lll(Rat(delta));
        gso(G_, mu_, B_);
        Ginv_ = detail::rat_inverse(G_);
        mu_d_.assign(n_, std::vector<double>(n_, 0));
        B_d_.resize(n_);
        dmu_ = 0;
        dB_rel_ = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            B_d_[i] = B_[i].get_d();
            dB_rel_ = std::max(dB_rel_, up(abs(Rat(B_d_[i]) - B_[i]) / B_[i]));
            for (std::size_t j = 0; j < i; ++j) {
                mu_d_[i][j] = mu_[i][j].get_d();
                dmu_ = std::max(dmu_, up(abs(Rat(mu_d_[i][j]) - mu_[i][j])));
            }
        }
    }

    const ZBasis& zbasis() const { return zb_; }
    const std::vector<std::vector<Rat>>& reduced_gram() const { return G_; }

    // Every lattice point within radius2 of target, with exact squared distance.
    std::vector<CvpHit> enumerate(const HermVec& target, const Rat& radius2, CvpStats* stats = nullptr) const {
        if (radius2 <= 0) throw std::invalid_argument("radius must be positive");
        std::vector<Rat> c = target_coords(target);
        double R = radius2.get_d() * (1 + 1e-15);
        double slack = R * 1e-9 + 1e-12;
        for (int attempt = 0; attempt < 24; ++attempt, slack *= 2) {
            double err = error_bound(c, R + slack, R);
            if (err > slack / 2) continue;
            CvpStats st;
            st.retries = attempt;
            st.slack = slack;
            st.error_bound = err;
            std::vector<std::vector<long>> cand;
            run(c, R + slack, st, cand);
            std::vector<CvpHit> hits;
            for (const auto& n : cand) {
                Rat d2 = exact_dist2(n, c);
                if (d2 <= radius2) hits.push_back({point(n), d2});
            }
            st.float_candidates = cand.size();
            if (stats) *stats = st;
            return hits;
        }
        throw std::runtime_error("inflate and retry: pruning certificate failed after bounded retries");
    }

private:
    static double up(const Rat& x) { return x.get_d() * (1 + 1e-12) + 1e-300; }

    static void gso(const std::vector<std::vector<Rat>>& G, std::vector<std::vector<Rat>>& mu, std::vector<Rat>& B) {
        std::size_t n = G.size();
        mu.assign(n, std::vector<Rat>(n, Rat(0)));
        B.assign(n, Rat(0));
        std::vector<std::vector<Rat>> r(n, std::vector<Rat>(n, Rat(0)));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                Rat s = G[i][j];
                for (std::size_t k = 0; k < j; ++k) s -= mu[j][k] * r[i][k];
                r[i][j] = s;
                if (j < i) mu[i][j] = s / B[j];
            }
            B[i] = r[i][i];
            if (B[i] <= 0) throw std::domain_error("Gram matrix is not positive definite");
            mu[i][i] = 1;
        }
    }

    static Int round_rat(const Rat& x) {
        Rat h = x + Rat(1, 2);
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
        return q;
    }

    void lll(const Rat& delta) {
        std::vector<std::vector<Rat>> mu;
        std::vector<Rat> B;
        gso(G_, mu, B);
        std::size_t k = 1;
        while (k < n_) {
            for (std::size_t j = k; j-- > 0;) {
                Int r = round_rat(mu[k][j]);
                if (r == 0) continue;
                Rat gkk_old = G_[k][k], gkj_old = G_[k][j], gjj = G_[j][j];
                Rat rr(r);
                for (std::size_t t = 0; t < n_; ++t) U_[k][t] -= r * U_[j][t];
                for (std::size_t t = 0; t < n_; ++t)
                    if (t != k) G_[k][t] -= rr * G_[j][t];
                G_[k][k] = gkk_old - 2 * rr * gkj_old + rr * rr * gjj;
                for (std::size_t t = 0; t < n_; ++t) G_[t][k] = G_[k][t];
                for (std::size_t t = 0; t < j; ++t) mu[k][t] -= rr * mu[j][t];
                mu[k][j] -= rr;
            }
            if (B[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
                ++k;
            } else {
                std::swap(U_[k], U_[k - 1]);
                std::swap(G_[k], G_[k - 1]);
                for (std::size_t t = 0; t < n_; ++t) std::swap(G_[t][k], G_[t][k - 1]);
                gso(G_, mu, B);
                k = std::max<std::size_t>(k - 1, 1);
            }
        }
    }

    std::vector<Rat> target_coords(const HermVec& t) const {
        std::vector<Rat> g0(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            RealQuad r = inner(zb_.real_basis[j], t).re();
            if (r.b != 0) throw std::domain_error("target outside the rational span");
            g0[j] = r.a;
        }
        std::vector<Rat> g(n_, Rat(0)), c(n_, Rat(0));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (U_[i][j] != 0) g[i] += Rat(U_[i][j]) * g0[j];
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) c[i] += Ginv_[i][j] * g[j];
        // reconstruct to confirm the target lies in the span
        std::vector<Rat> orig(n_, Rat(0));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (U_[i][j] != 0) orig[j] += c[i] * Rat(U_[i][j]);
        if (zb_.combine_rat(orig) != t) throw std::domain_error("target is not in the span of the lattice");
        return c;
    }

    // A-priori bound on the floating error of every partial sum the search
    // evaluates at nodes whose exact partial sum is <= R.
    double error_bound(const std::vector<Rat>& c, double Rp, double R) const {
        const double u = std::ldexp(1.0, -52);
        std::size_t n = n_;
        std::vector<double> cd(n), dc(n), Y(n), T(n), e(n);
        double dcmax = 0;
        for (std::size_t i = 0; i < n; ++i) {
            cd[i] = c[i].get_d();
            dcmax = std::max(dcmax, up(abs(Rat(cd[i]) - c[i])));
            Y[i] = std::sqrt(Rp * Ginv_[i][i].get_d()) * (1 + 1e-9) + 1e-9;
            T[i] = std::sqrt(R / B_d_[i]) * (1 + dB_rel_ + 1e-9) + 1e-9;
        }
        double total = (n + 2) * u * Rp;
        for (std::size_t i = 0; i < n; ++i) {
            double ei = dcmax + (n + 3) * u * (2 * std::fabs(cd[i]) + Y[i] + 1);
            for (std::size_t j = i + 1; j < n; ++j) {
                double m = std::fabs(mu_d_[j][i]) + dmu_;
                ei += dmu_ * (Y[j] + dcmax) + m * dcmax + (n + 3) * u * m * (Y[j] + 2 * std::fabs(cd[j]) + 1);
            }
            e[i] = ei;
            double te = T[i] + ei;
            total += dB_rel_ * B_d_[i] * te * te + B_d_[i] * (1 + dB_rel_) * ei * (2 * T[i] + ei) + 4 * u * B_d_[i] * te * te;
        }
        e_ = e;
        return total * (1 + 1e-6);
    }

    void run(const std::vector<Rat>& c, double Rp, CvpStats& st, std::vector<std::vector<long>>& out) const {
        std::size_t n = n_;
        std::vector<double> cd(n);
        for (std::size_t i = 0; i < n; ++i) cd[i] = c[i].get_d();
        std::vector<long> x(n, 0);
        auto rec = [&](auto&& self, std::size_t level, double partial) -> void {
            std::size_t i = level - 1;
            double ctr = cd[i];
            for (std::size_t j = i + 1; j < n; ++j) ctr -= mu_d_[j][i] * (static_cast<double>(x[j]) - cd[j]);
            double rem = Rp - partial;
            if (rem < 0) return;
            double half = std::sqrt(rem / B_d_[i]) * (1 + dB_rel_ + 1e-12) + e_[i] + 1e-12;
            long lo = static_cast<long>(std::ceil(ctr - half)), hi = static_cast<long>(std::floor(ctr + half));
            for (long v = lo; v <= hi; ++v) {
                ++st.nodes;
                double d = static_cast<double>(v) - ctr;
                double p = partial + B_d_[i] * d * d;
                if (p > Rp) continue;
                x[i] = v;
                if (i == 0) out.push_back(x);
                else self(self, i, p);
            }
            x[i] = 0;
        };
        rec(rec, n, 0.0);
    }

    Rat exact_dist2(const std::vector<long>& x, const std::vector<Rat>& c) const {
        std::vector<Rat> d(n_);
        for (std::size_t i = 0; i < n_; ++i) d[i] = Rat(x[i]) - c[i];
        Rat s(0);
        for (std::size_t i = 0; i < n_; ++i) {
            if (d[i] == 0) continue;
            Rat row(0);
            for (std::size_t j = 0; j < n_; ++j)
                if (d[j] != 0) row += G_[i][j] * d[j];
            s += d[i] * row;
        }
        return s;
    }

    HermVec point(const std::vector<long>& x) const {
        std::vector<Int> orig(n_, Int(0));
        for (std::size_t i = 0; i < n_; ++i)
            if (x[i] != 0)
                for (std::size_t j = 0; j < n_; ++j) orig[j] += x[i] * U_[i][j];
        return zb_.combine(orig);
    }

    ZBasis zb_;
    std::size_t n_ = 0;
    std::vector<std::vector<Rat>> G_;   // reduced Gram
    std::vector<std::vector<Int>> U_;   // reduced basis rows in terms of the original
    std::vector<std::vector<Rat>> mu_;
    std::vector<Rat> B_;
    std::vector<std::vector<Rat>> Ginv_;
    std::vector<std::vector<double>> mu_d_;
    std::vector<double> B_d_;
    double dmu_ = 0, dB_rel_ = 0;
    mutable std::vector<double> e_;
};

}  // namespace mirrorcert
