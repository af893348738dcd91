/**
 * @file tensor.hpp
 * @brief Coset-indexed tensor powers of free abelian groups Z(Y)^{⊗ G/V}:
 *        translation actions, transfers, Frobenius lifts, reindexed tensor
 *        powers, multilinear pushforwards and orbit bases.
 *
 * A basis index is a word assigning a generator of Y to every coset of G/V,
 * in the order fixed by the CosetTable. An element is a sparse integer
 * combination of such words; zero coefficients are never stored, so equality
 * is plain map equality. Coefficients are exact integers throughout (the
 * base ring is Z, so Frobenius lifts act as the identity on coefficients).
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gwitt/errors.hpp"
#include "gwitt/group.hpp"
#include "gwitt/linalg.hpp"

namespace gwitt {

constexpr long kDefaultTermBound = 1'000'000;

struct GeneratorSet {
    int rank = 1;
    std::vector<std::string> labels;

    std::string label(int i) const {
        if (i < static_cast<int>(labels.size())) return labels[i];
        return "y" + std::to_string(i);
    }
};

using Word = std::vector<uint8_t>;

/// Element of Z(Y)^{⊗ G/V}. `space` must outlive the element.
struct TensorElement {
    const CosetTable* space = nullptr;
    int rank = 1; ///< |Y|
    std::map<Word, Int> terms;

    bool is_zero() const { return terms.empty(); }

    void add_term(const Word& w, const Int& c) {
        if (c == 0) return;
        auto it = terms.find(w);
        if (it == terms.end()) {
            terms.emplace(w, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    TensorElement& operator+=(const TensorElement& o) {
        for (const auto& [w, c] : o.terms) add_term(w, c);
        return *this;
    }
    TensorElement& operator-=(const TensorElement& o) {
        for (const auto& [w, c] : o.terms) add_term(w, -c);
        return *this;
    }
    TensorElement& operator*=(const Int& k) {
        if (k == 0) {
            terms.clear();
        } else {
            for (auto& [w, c] : terms) c *= k;
        }
        return *this;
    }
    friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
    friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }

    bool operator==(const TensorElement& o) const { return rank == o.rank && terms == o.terms; }
};

inline TensorElement zero_tensor(const CosetTable& space, int rank) {
    return TensorElement{&space, rank, {}};
}

inline TensorElement monomial(const CosetTable& space, int rank, const Word& w, Int c = 1) {
    TensorElement t{&space, rank, {}};
    t.add_term(w, c);
    return t;
}

namespace detail {
/// Word translation for act(g, -): value of the new word at coset c* (gVg^-1)
/// is the old value at coset (c*g) V.
inline Word act_word(const GroupCtx& ctx, int g, const Word& w, const CosetTable& src,
                     const CosetTable& dst) {
    Word out(dst.count());
    for (int c = 0; c < dst.count(); ++c)
        out[c] = w[src.coset_of(ctx.group().mul(dst.rep(c), g))];
    return out;
}
} // namespace detail

/// g . t : Z(Y)^{⊗ G/V} -> Z(Y)^{⊗ G/gVg^-1}. Depends only on the coset gV.
/// `dst` must be a coset table for G/gVg^-1.
inline TensorElement act(const GroupCtx& ctx, int g, const TensorElement& t, const CosetTable& dst) {
    TensorElement out{&dst, t.rank, {}};
    for (const auto& [w, c] : t.terms)
        out.add_term(detail::act_word(ctx, g, w, *t.space, dst), c);
    return out;
}

/// Convenience overload for g in N_G(V): source and target space coincide.
inline TensorElement act(const GroupCtx& ctx, int g, const TensorElement& t) {
    return act(ctx, g, t, *t.space);
}

inline bool fixed_by(const GroupCtx& ctx, const TensorElement& t, const Subgroup& w) {
    for (int x : w.elems)
        if (!(act(ctx, x, t) == t)) return false;
    return true;
}

/// Transfer tr_W^{W'}: sum of act(w, t) over coset representatives of W'/W.
/// Requires V <= W <= W' <= N_G(V) and t fixed by W (checked).
inline TensorElement transfer(const GroupCtx& ctx, const TensorElement& t, int w_id, int wp_id) {
    const Subgroup& w = ctx.sub(w_id);
    const Subgroup& wp = ctx.sub(wp_id);
    if (!w.subset_of(wp)) throw validation_error("transfer: W not contained in W'");
    if (!fixed_by(ctx, t, w)) throw validation_error("transfer: input not fixed by W");
    const CosetTable& reps = ctx.cosets(wp_id, w_id);
    TensorElement out = zero_tensor(*t.space, t.rank);
    for (int c = 0; c < reps.count(); ++c) out += act(ctx, reps.rep(c), t);
    return out;
}

/// Frobenius lift phi^V_U for U <= V: additive pullback of indices along the
/// canonical surjection G/U ->> G/V; identity on integer coefficients.
inline TensorElement frobenius_lift(const GroupCtx& ctx, const TensorElement& t,
                                    const CosetTable& gu) {
    const CosetTable& gv = *t.space;
    if (!gu.by().subset_of(gv.by())) throw validation_error("frobenius_lift: U not contained in V");
    (void)ctx;
    std::vector<int> pull(gu.count());
    for (int c = 0; c < gu.count(); ++c) pull[c] = gv.coset_of(gu.rep(c));
    TensorElement out{&gu, t.rank, {}};
    for (const auto& [w, coef] : t.terms) {
        Word nw(gu.count());
        for (int c = 0; c < gu.count(); ++c) nw[c] = w[pull[c]];
        out.add_term(nw, coef);
    }
    return out;
}

/// f_{G/V}(t^{⊗ V/U}) for U <= V: full multilinear expansion of the V/U tensor
/// power followed by the reindexing isomorphism determined by the coset
/// representatives stored in t.space and in `vu`. Not additive for |V:U| >= 2.
inline TensorElement tensor_power_reindexed(const GroupCtx& ctx, const TensorElement& t,
                                            const CosetTable& gu, const CosetTable& vu,
                                            long term_bound = kDefaultTermBound) {
    const CosetTable& gv = *t.space;
    if (!gu.by().subset_of(gv.by())) throw validation_error("tensor power: U not contained in V");
    const FiniteGroup& g = ctx.group();
    const int ell = vu.count();

    // Decompose each coset dU in G/U as g_i s U with g_i the G/V representative
    // of dV and s = g_i^-1 d in V; record (i, position of sU in V/U).
    std::vector<int> pos_i(gu.count()), pos_j(gu.count());
    for (int c = 0; c < gu.count(); ++c) {
        int d = gu.rep(c);
        int i = gv.coset_of(d);
        int s = g.mul(g.inv(gv.rep(i)), d);
        pos_i[c] = i;
        pos_j[c] = vu.coset_of(s);
        if (pos_j[c] < 0) throw validation_error("tensor power: inconsistent coset tables");
    }

    std::vector<const Word*> words;
    std::vector<const Int*> coeffs;
    for (const auto& [w, c] : t.terms) {
        words.push_back(&w);
        coeffs.push_back(&c);
    }
    const size_t j_count = words.size();
    TensorElement out{&gu, t.rank, {}};
    if (j_count == 0) return out;

    double expansions = 1;
    for (int i = 0; i < ell; ++i) {
        expansions *= static_cast<double>(j_count);
        if (expansions > static_cast<double>(term_bound))
            throw resource_error("tensor power: expansion exceeds term bound");
    }

    std::vector<size_t> chi(ell, 0); // function V/U-positions -> terms of t
    while (true) {
        Int c = 1;
        for (int j = 0; j < ell; ++j) c *= *coeffs[chi[j]];
        Word w(gu.count());
        for (int p = 0; p < gu.count(); ++p) w[p] = (*words[chi[pos_j[p]]])[pos_i[p]];
        out.add_term(w, c);
        int j = 0;
        while (j < ell && ++chi[j] == j_count) chi[j++] = 0;
        if (j == ell) break;
    }
    return out;
}

/// Multilinear pushforward along an integer matrix A : Z(Y) -> Z(Y'), with
/// |Y| columns; every tensor factor y_i is replaced by sum_j A[j][i] y'_j.
inline TensorElement pushforward(const IntMatrix& a, const TensorElement& t,
                                 long term_bound = kDefaultTermBound) {
    if (a.cols() != t.rank) throw validation_error("pushforward: matrix has wrong column count");
    const int out_rank = a.rows();
    const int len = t.space->count();
    TensorElement out{t.space, out_rank, {}};
    for (const auto& [w, c] : t.terms) {
        // Expand position by position, pruning zero branches.
        std::map<Word, Int> partial{{Word{}, c}};
        for (int p = 0; p < len; ++p) {
            std::map<Word, Int> next;
            for (const auto& [pw, pc] : partial) {
                for (int j = 0; j < out_rank; ++j) {
                    const Int& e = a.at(j, w[p]);
                    if (e == 0) continue;
                    Word nw = pw;
                    nw.push_back(static_cast<uint8_t>(j));
                    next[nw] += pc * e;
                }
            }
            partial = std::move(next);
            if (static_cast<long>(partial.size()) > term_bound)
                throw resource_error("pushforward: expansion exceeds term bound");
        }
        for (const auto& [pw, pc] : partial) out.add_term(pw, pc);
    }
    return out;
}

/// Orbits of N acting on the basis words of Z(Y)^{⊗ G/V} (V <= N <= N_G(V)).
struct OrbitData {
    std::vector<Word> reps;          ///< canonical (lexicographically minimal) word per orbit
    std::map<Word, int> orbit_of;    ///< word -> orbit index
    std::vector<long> orbit_size;
    std::vector<long> transfer_mult; ///< |Stab_N(word) : V| = |N:V| / orbit size
};

inline OrbitData orbit_basis(const GroupCtx& ctx, const CosetTable& gv, int n_id, int rank,
                             long term_bound = kDefaultTermBound) {
    const int len = gv.count();
    double total = 1;
    for (int i = 0; i < len; ++i) {
        total *= rank;
        if (total > static_cast<double>(term_bound))
            throw resource_error("orbit basis: index space exceeds term bound");
    }
    const Subgroup& n = ctx.sub(n_id);
    const int weyl_order = n.order() / gv.by().order();

    OrbitData data;
    Word w(len, 0);
    while (true) {
        if (!data.orbit_of.count(w)) {
            int idx = static_cast<int>(data.reps.size());
            std::set<Word> orbit;
            for (int x : n.elems) orbit.insert(detail::act_word(ctx, x, w, gv, gv));
            for (const Word& o : orbit) data.orbit_of[o] = idx;
            data.reps.push_back(*orbit.begin());
            data.orbit_size.push_back(static_cast<long>(orbit.size()));
            data.transfer_mult.push_back(weyl_order / static_cast<long>(orbit.size()));
        }
        int p = len - 1;
        while (p >= 0 && w[p] == rank - 1) w[p--] = 0;
        if (p < 0) break;
        ++w[p];
    }
    return data;
}

/// tr_V^N applied to an element (every element is V-fixed since V translates
/// G/V trivially): decomposes into orbit sums scaled by the stabilizer index.
inline TensorElement orbit_transfer(const GroupCtx& ctx, const TensorElement& t, int n_id) {
    return transfer(ctx, t, ctx.sub_id(t.space->by()), n_id);
}

/// Render as a literal like "3*(y0,y1) - (y1,y0)".
inline std::string to_literal(const TensorElement& t, const GeneratorSet& y) {
    if (t.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : t.terms) {
        Int a = c;
        if (first) {
            if (a < 0) { out += "-"; a = -a; }
        } else {
            out += a < 0 ? " - " : " + ";
            if (a < 0) a = -a;
        }
        first = false;
        if (a != 1) out += a.get_str() + "*";
        out += "(";
        for (size_t i = 0; i < w.size(); ++i) {
            if (i) out += ",";
            out += y.label(w[i]);
        }
        out += ")";
    }
    return out;
}

} // namespace gwitt
