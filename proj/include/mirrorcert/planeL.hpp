#pragma once
// The plane P2(F3), its line code, and the 14-coordinate model of L.

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mirrorcert/hermitian.hpp"

namespace mirrorcert {

// Points and lines are 1..13 at the API; arrays are 0-based.
class ProjPlane {
public:
    ProjPlane() {
        for (int j = 1; j <= 13; ++j) {
            const int offs[4] = {0, 1, 3, 9};
            for (int k = 0; k < 4; ++k) {
                int p = (j - 1 + offs[k]) % 13 + 1;
                lines_[j - 1][k] = p;
                inc_[p - 1][j - 1] = true;
            }
        }
    }
    bool incident(int i, int j) const {
        if (i < 1 || i > 13 || j < 1 || j > 13) throw std::out_of_range("point/line index outside 1..13");
        return inc_[i - 1][j - 1];
    }
    const std::array<int, 4>& line(int j) const { return lines_.at(j - 1); }

private:
    std::array<std::array<int, 4>, 13> lines_{};
    std::array<std::array<bool, 13>, 13> inc_{};
};

inline const ProjPlane& plane() {
    static const ProjPlane p;
    return p;
}

inline bool incident(int i, int j) { return plane().incident(i, j); }

using Word = std::array<std::uint8_t, 13>;

inline std::uint32_t word_index(const Word& w) {
    std::uint32_t x = 0;
    for (int k = 12; k >= 0; --k) x = x * 3 + w[k];
    return x;
}
inline int word_weight(const Word& w) {
    int n = 0;
    for (auto c : w) n += c != 0;
    return n;
}
inline int word_sum(const Word& w) {
    int s = 0;
    for (auto c : w) s += c;
    return s % 3;
}

class LineCode {
public:
    LineCode() : member_(1594323, 0) {
        // reduce the 13 line vectors to a basis over F3
        std::vector<Word> rows;
        for (int j = 1; j <= 13; ++j) {
            Word w{};
            for (int p : plane().line(j)) w[p - 1] = 1;
            rows.push_back(w);
        }
        std::size_t r = 0;
        for (int col = 0; col < 13 && r < rows.size(); ++col) {
            std::size_t piv = r;
            while (piv < rows.size() && rows[piv][col] == 0) ++piv;
            if (piv == rows.size()) continue;
            std::swap(rows[r], rows[piv]);
            int inv = rows[r][col] == 1 ? 1 : 2;
            for (auto& c : rows[r]) c = static_cast<std::uint8_t>((c * inv) % 3);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == r || rows[i][col] == 0) continue;
                int f = rows[i][col];
                for (int k = 0; k < 13; ++k) rows[i][k] = static_cast<std::uint8_t>((rows[i][k] + 3 * 3 - f * rows[r][k]) % 3);
            }
            ++r;
        }
        rows.resize(r);
        gen_ = rows;
        std::size_t total = 1;
        for (std::size_t k = 0; k < gen_.size(); ++k) total *= 3;
        for (std::size_t n = 0; n < total; ++n) {
            Word w{};
            std::size_t t = n;
            for (const auto& g : gen_) {
                int a = static_cast<int>(t % 3);
                t /= 3;
                for (int k = 0; k < 13; ++k) w[k] = static_cast<std::uint8_t>((w[k] + a * g[k]) % 3);
            }
            words_.push_back(w);
        }
        std::sort(words_.begin(), words_.end(), [](const Word& a, const Word& b) { return word_index(a) < word_index(b); });
        for (const auto& w : words_) member_[word_index(w)] = 1;
    }
    std::size_t dimension() const { return gen_.size(); }
    const std::vector<Word>& generators() const { return gen_; }
    // sorted by base-3 index, so the order is canonical
    const std::vector<Word>& words() const { return words_; }
    bool contains(const Word& w) const { return member_[word_index(w)] != 0; }
    bool contains_index(std::uint32_t idx) const { return member_[idx] != 0; }

private:
    std::vector<Word> gen_;
    std::vector<Word> words_;
    std::vector<std::uint8_t> member_;
};

inline const LineCode& line_code() {
    static const LineCode c;
    return c;
}

// ---------------------------------------------------------------------------

struct NamedVectorsP {
    std::array<HermVec, 13> p_;
    std::array<HermVec, 13> l_;
    HermVec p_inf, l_inf, tau, rho;

    const HermVec& p(int i) const { return p_.at(i - 1); }
    const HermVec& l(int j) const { return l_.at(j - 1); }
    HermVec& p(int i) { return p_.at(i - 1); }
    HermVec& l(int j) { return l_.at(j - 1); }

    static NamedVectorsP standard() {
        const FormPtr& f = form_P2F3();
        NamedVectorsP n;
        for (int i = 1; i <= 13; ++i) {
            HermVec v = HermVec::zero(f);
            v[i] = Th();
            n.p(i) = v;
            HermVec u = HermVec::zero(f);
            u[0] = Q(1);
            for (int pt : plane().line(i)) u[pt] = Q(1);
            n.l(i) = u;
        }
        n.p_inf = HermVec::zero(f);
        n.p_inf[0] = Thb();
        std::vector<CycScalar> c(14, Q(1));
        c[0] = Q(4);
        n.l_inf = HermVec(f, c);
        c[0] = Q(4) + R3();
        n.tau = HermVec(f, c);
        std::vector<CycScalar> r(14, Q(-1));
        r[0] = Q(3) * W() - Q(1);
        n.rho = HermVec(f, r);
        return n;
    }

    // p_1..p_13, l_1..l_13
    std::vector<HermVec> roots26() const {
        std::vector<HermVec> v(p_.begin(), p_.end());
        v.insert(v.end(), l_.begin(), l_.end());
        return v;
    }
};

inline bool member_L(const HermVec& x) {
    if (x.form()->tag() != Model::P2F3) throw std::invalid_argument("member_L expects the P2F3 form");
    Word w{};
    int sum = 0;
    for (int k = 1; k <= 13; ++k) {
        if (!x[k].in_E()) throw std::domain_error("non-integral entry");
        w[k - 1] = static_cast<std::uint8_t>(x[k].to_eis().mod_theta());
        sum += w[k - 1];
    }
    if (!x[0].in_E()) throw std::domain_error("non-integral entry");
    if (x[0].to_eis().mod_theta() != sum % 3) return false;
    return line_code().contains(w);
}

// F: p_i -> l_{14-i}, l_j -> -p_{14-j}, solved from 14 independent images.
inline CMatrix isometry_F(const NamedVectorsP& nv) {
    std::vector<HermVec> src, dst;
    for (int i = 1; i <= 13; ++i) {
        src.push_back(nv.p(i));
        dst.push_back(nv.l(14 - i));
    }
    src.push_back(nv.l(1));
    dst.push_back(-nv.p(13));
    CMatrix a = CMatrix::from_columns(src), b = CMatrix::from_columns(dst);
    CMatrix f = b * a.inverse();
    for (int i = 1; i <= 13; ++i) {
        if (f.apply(nv.p(i)) != nv.l(14 - i) || f.apply(nv.l(i)) != -nv.p(14 - i))
            throw std::logic_error("inconsistent solve for the point/line swap");
    }
    return f;
}

}  // namespace mirrorcert
