/**
 * @file ghost.hpp
 * @brief Ghost groups and the ghost map, the additive embedding w^f, Dwork
 *        congruence checking and inductive ghost-preimage construction.
 *
 * A ghost vector is stored through its canonical components only: one
 * N_H(V)-fixed tensor element per distinguished subgroup V. The remaining
 * components of the H-equivariant family are reconstructed on demand from
 * a_{hVh^-1} = h . a_V.
 */
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gwitt/errors.hpp"
#include "gwitt/group.hpp"
#include "gwitt/tensor.hpp"
#include "gwitt/truncation.hpp"

namespace gwitt {

/// Fixed computation context (G, H, S, Y) with per-level caches.
/// Levels follow the canonical order of S: decreasing subgroup order,
/// ties by element set; this refines increasing index |H:V|.
class WittContext {
public:
    struct Level {
        int v = -1;                  ///< canonical subgroup id
        const CosetTable* gv = nullptr; ///< G/V (full ambient group over V)
        int n_hv = -1;               ///< id of N_H(V)
        OrbitData orbits;            ///< N_H(V)-orbits of index words over G/V
    };

    WittContext(const GroupCtx& g, TruncationSet s, GeneratorSet y,
                long term_bound = kDefaultTermBound, bool check_fixed = true,
                std::map<int, std::vector<int>> rep_overrides = {},
                std::vector<int> canon_override = {})
        : g_(&g), s_(std::move(s)), y_(std::move(y)), term_bound_(term_bound),
          check_fixed_(check_fixed) {
        for (auto& [v, reps] : rep_overrides)
            overrides_.emplace(v, CosetTable(g.group(), g.sub(g.full_id()), g.sub(v), reps));
        std::vector<int> canon = s_.canon;
        if (!canon_override.empty()) {
            if (canon_override.size() != canon.size())
                throw validation_error("canonical override: one representative per class required");
            std::set<int> seen;
            for (int v : canon_override) {
                if (!s_.contains(v))
                    throw validation_error("canonical override: subgroup not a member of S");
                if (!seen.insert(g.canonical_in(s_.ambient, v)).second)
                    throw validation_error("canonical override: two representatives in one class");
            }
            canon = std::move(canon_override);
            std::sort(canon.begin(), canon.end(), [&g](int a, int b) {
                const Subgroup& sa = g.sub(a);
                const Subgroup& sb = g.sub(b);
                if (sa.order() != sb.order()) return sa.order() > sb.order();
                return sa.elems < sb.elems;
            });
        }
        for (int v : canon) {
            Level lv;
            lv.v = v;
            lv.gv = &gv(v);
            lv.n_hv = g.normalizer(v, s_.ambient);
            lv.orbits = orbit_basis(g, *lv.gv, lv.n_hv, y_.rank, term_bound_);
            level_index_[v] = static_cast<int>(levels_.size());
            levels_.push_back(std::move(lv));
        }
    }
    WittContext(const WittContext&) = delete;
    WittContext& operator=(const WittContext&) = delete;

    const GroupCtx& G() const { return *g_; }
    int H() const { return s_.ambient; }
    const TruncationSet& S() const { return s_; }
    const GeneratorSet& Y() const { return y_; }
    int rank() const { return y_.rank; }
    long term_bound() const { return term_bound_; }
    bool check_fixed() const { return check_fixed_; }

    const std::vector<Level>& levels() const { return levels_; }
    const Level& level(int idx) const { return levels_[idx]; }
    int level_count() const { return static_cast<int>(levels_.size()); }
    int level_of(int v) const {
        auto it = level_index_.find(v);
        if (it == level_index_.end()) throw validation_error("subgroup is not a canonical member of S");
        return it->second;
    }

    /// Coset table for G/V honoring any representative override.
    const CosetTable& gv(int v) const {
        auto it = overrides_.find(v);
        if (it != overrides_.end()) return it->second;
        return g_->cosets(g_->full_id(), v);
    }

    /// This context's distinguished representative of the class of U, and a
    /// conjugator: returns (V, h) with V a level subgroup and h V h^-1 = U,
    /// h in H.
    std::pair<int, int> canonical_of(int u) const {
        auto it = canon_cache_.find(u);
        if (it != canon_cache_.end()) return it->second;
        if (!s_.contains(u)) throw validation_error("subgroup not a member of S");
        int cls = g_->canonical_in(s_.ambient, u);
        for (const Level& lv : levels_) {
            if (g_->canonical_in(s_.ambient, lv.v) != cls) continue;
            auto h = g_->conjugator_in(s_.ambient, lv.v, u);
            if (!h) throw verification_error("canonical class representative is not H-conjugate");
            auto res = std::make_pair(lv.v, *h);
            canon_cache_[u] = res;
            return res;
        }
        throw verification_error("no level representative for the class of the subgroup");
    }

    bool same_shape(const WittContext& o) const {
        return g_ == o.g_ && s_ == o.s_ && y_.rank == o.y_.rank;
    }

private:
    const GroupCtx* g_;
    TruncationSet s_;
    GeneratorSet y_;
    long term_bound_;
    bool check_fixed_;
    std::map<int, CosetTable> overrides_;
    std::vector<Level> levels_;
    std::map<int, int> level_index_;
    mutable std::map<int, std::pair<int, int>> canon_cache_;
};

using WittContextPtr = std::shared_ptr<const WittContext>;

/// A tuple of tensor elements indexed by the canonical subgroups of S,
/// with no fixed-point requirement (the domain of the ghost map).
/// Missing keys mean zero.
struct ComponentFamily {
    std::map<int, TensorElement> comp;
};

/// An element of the ghost group: canonical components, each N_H(V)-fixed.
struct GhostVector {
    std::map<int, TensorElement> comp;

    bool operator==(const GhostVector& o) const { return comp == o.comp; }
    bool is_zero() const {
        for (const auto& [v, t] : comp)
            if (!t.is_zero()) return false;
        return true;
    }
    GhostVector& operator+=(const GhostVector& o) {
        for (const auto& [v, t] : o.comp) {
            auto it = comp.find(v);
            if (it == comp.end()) comp.emplace(v, t);
            else it->second += t;
        }
        return *this;
    }
    GhostVector& operator-=(const GhostVector& o) {
        for (const auto& [v, t] : o.comp) {
            auto it = comp.find(v);
            if (it == comp.end()) { TensorElement neg = t; neg *= Int(-1); comp.emplace(v, neg); }
            else it->second -= t;
        }
        return *this;
    }
    friend GhostVector operator+(GhostVector a, const GhostVector& b) { return a += b; }
    friend GhostVector operator-(GhostVector a, const GhostVector& b) { return a -= b; }
};

namespace detail {
/// Re-express a tensor element relative to another coset table of the same
/// coset space (identity whenever the representatives agree).
inline TensorElement reindex_space(const TensorElement& t, const CosetTable& dst) {
    if (t.space == &dst) return t;
    TensorElement out{&dst, t.rank, {}};
    for (const auto& [w, c] : t.terms) {
        Word nw(dst.count());
        for (int p = 0; p < dst.count(); ++p) nw[p] = w[t.space->coset_of(dst.rep(p))];
        out.add_term(nw, c);
    }
    return out;
}

inline void check_level_fixed(const WittContext& ctx, const WittContext::Level& lv,
                              const TensorElement& t, const char* where) {
    if (!ctx.check_fixed()) return;
    if (!fixed_by(ctx.G(), t, ctx.G().sub(lv.n_hv)))
        throw verification_error(std::string(where) + ": component is not N_H(V)-fixed");
}
} // namespace detail

/// Component of the implied full S-indexed family at any U in S,
/// reconstructed from the canonical components by H-equivariance.
inline TensorElement component_at(const WittContext& ctx, const GhostVector& a, int u) {
    auto [v, h] = ctx.canonical_of(u);
    auto it = a.comp.find(v);
    if (it == a.comp.end()) return zero_tensor(ctx.gv(u), ctx.rank());
    if (u == v && it->second.space == &ctx.gv(v)) return it->second;
    return act(ctx.G(), h, it->second, ctx.gv(u));
}

/// The ghost map: w_U(n) = sum_V sum_{hV in (H/V)^U} h . f_{G/V}(n_V^{(x) V/U^h}).
inline GhostVector ghost_map(const WittContext& ctx, const ComponentFamily& n) {
    const GroupCtx& g = ctx.G();
    GhostVector out;
    for (const auto& ulv : ctx.levels()) {
        TensorElement acc = zero_tensor(*ulv.gv, ctx.rank());
        for (const auto& vlv : ctx.levels()) {
            auto it = n.comp.find(vlv.v);
            if (it == n.comp.end() || it->second.is_zero()) continue;
            const TensorElement nv = detail::reindex_space(it->second, *vlv.gv);
            for (int h : g.fixed_cosets(ctx.H(), vlv.v, ulv.v)) {
                int uh = g.conj_sub(g.group().inv(h), ulv.v); // U^h <= V
                const CosetTable& guh = g.cosets(g.full_id(), uh);
                const CosetTable& vuh = g.cosets(vlv.v, uh);
                TensorElement part =
                    tensor_power_reindexed(g, nv, guh, vuh, ctx.term_bound());
                acc += act(g, h, part, *ulv.gv);
            }
        }
        detail::check_level_fixed(ctx, ulv, acc, "ghost_map");
        out.comp.emplace(ulv.v, std::move(acc));
    }
    return out;
}

/// Orbit coordinates: one integer per entry of each level's orbit basis,
/// concatenated in level order.
struct OrbitCoords {
    std::vector<Int> x;

    bool operator==(const OrbitCoords& o) const { return x == o.x; }
};

inline int coords_size(const WittContext& ctx) {
    int n = 0;
    for (const auto& lv : ctx.levels()) n += static_cast<int>(lv.orbits.reps.size());
    return n;
}

inline int level_offset(const WittContext& ctx, int level_idx) {
    int n = 0;
    for (int i = 0; i < level_idx; ++i) n += static_cast<int>(ctx.level(i).orbits.reps.size());
    return n;
}

/// The tensor element over G/V represented by the V-block of orbit coordinates.
inline TensorElement level_lift(const WittContext& ctx, const OrbitCoords& c, int level_idx) {
    const auto& lv = ctx.level(level_idx);
    TensorElement t = zero_tensor(*lv.gv, ctx.rank());
    int off = level_offset(ctx, level_idx);
    for (size_t o = 0; o < lv.orbits.reps.size(); ++o)
        t.add_term(lv.orbits.reps[o], c.x[off + o]);
    return t;
}

/// The additive embedding w^f:
/// w^f_U(n) = sum_V sum_{hV in (H/V)^U} h . phi^V_{U^h}(n_V).
inline GhostVector ghost_linear(const WittContext& ctx, const OrbitCoords& coords) {
    const GroupCtx& g = ctx.G();
    if (static_cast<int>(coords.x.size()) != coords_size(ctx))
        throw validation_error("ghost_linear: coordinate length mismatch");
    GhostVector out;
    for (const auto& ulv : ctx.levels()) {
        TensorElement acc = zero_tensor(*ulv.gv, ctx.rank());
        for (int li = 0; li < ctx.level_count(); ++li) {
            const auto& vlv = ctx.level(li);
            TensorElement nv = level_lift(ctx, coords, li);
            if (nv.is_zero()) continue;
            for (int h : g.fixed_cosets(ctx.H(), vlv.v, ulv.v)) {
                int uh = g.conj_sub(g.group().inv(h), ulv.v);
                const CosetTable& guh = g.cosets(g.full_id(), uh);
                acc += act(g, h, frobenius_lift(g, nv, guh), *ulv.gv);
            }
        }
        detail::check_level_fixed(ctx, ulv, acc, "ghost_linear");
        out.comp.emplace(ulv.v, std::move(acc));
    }
    return out;
}

/// Solve tr_V^{N_H(V)}(x) = t for x, expressed in orbit coordinates of the
/// level. The transfer-image lattice is diagonal on orbit sums (its Hermite
/// form is diag(|Stab:V|) in the orbit-sum basis), so membership reduces to
/// constancy on orbits plus a divisibility per orbit.
inline std::optional<std::vector<Int>> solve_transfer(const WittContext::Level& lv,
                                                      const TensorElement& t) {
    std::vector<Int> coeff(lv.orbits.reps.size(), Int(0));
    std::map<int, long> seen;
    for (const auto& [w, c] : t.terms) {
        auto it = lv.orbits.orbit_of.find(w);
        if (it == lv.orbits.orbit_of.end()) return std::nullopt;
        int o = it->second;
        if (seen.count(o)) {
            if (coeff[o] * lv.orbits.transfer_mult[o] != c) return std::nullopt; // not orbit-constant
            ++seen[o];
        } else {
            Int q, r;
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), c.get_mpz_t(),
                        Int(lv.orbits.transfer_mult[o]).get_mpz_t());
            if (r != 0) return std::nullopt;
            coeff[o] = q;
            seen[o] = 1;
        }
    }
    for (const auto& [o, cnt] : seen)
        if (cnt != lv.orbits.orbit_size[o]) return std::nullopt; // orbit only partially covered
    return coeff;
}

/// The Dwork congruence sum at U: sum over vU in N_H(U)/U of
/// phi^{<vU>}_U (a_{<vU>}), an exact integer tensor element over G/U.
inline TensorElement dwork_sum(const WittContext& ctx, const GhostVector& a, int u) {
    const GroupCtx& g = ctx.G();
    int n_hu = g.normalizer(u, ctx.H());
    const CosetTable& nu = g.cosets(n_hu, u);
    const CosetTable& gu = ctx.gv(u);
    TensorElement acc = zero_tensor(gu, ctx.rank());
    for (int c = 0; c < nu.count(); ++c) {
        int v = nu.rep(c);
        std::vector<int> coset_elems;
        for (int x : g.sub(u).elems) coset_elems.push_back(g.group().mul(v, x));
        int w = g.sub_id(subgroup_generated(g.group(), coset_elems));
        if (!ctx.S().contains(w))
            throw verification_error("dwork_sum: <vU> escaped the truncation set");
        acc += frobenius_lift(g, component_at(ctx, a, w), gu);
    }
    return acc;
}

struct DworkReport {
    bool ok = true;
    int failed_u = -1;           ///< canonical subgroup id of the first failure
    TensorElement offending_sum; ///< the congruence sum that is not a transfer image
    std::string detail;
};

/// Check the Dwork congruences at every canonical U (equivariance makes the
/// remaining subgroups redundant). Passes exactly on the image of the ghost map.
inline DworkReport dwork_check(const WittContext& ctx, const GhostVector& a) {
    for (const auto& lv : ctx.levels()) {
        TensorElement s = dwork_sum(ctx, a, lv.v);
        if (!solve_transfer(lv, s)) {
            DworkReport r;
            r.ok = false;
            r.failed_u = lv.v;
            r.offending_sum = s;
            r.detail = "congruence sum at subgroup {" + std::to_string(lv.v) +
                       "} is not in the transfer image";
            return r;
        }
    }
    return {};
}

/// Invert w^f on its image: walk the canonical subgroups by increasing index
/// |H:V| and peel off transfers. Throws verification_error when the input is
/// not a ghost image (equivalently, when a Dwork congruence fails).
inline OrbitCoords ghost_preimage(const WittContext& ctx, const GhostVector& a) {
    const GroupCtx& g = ctx.G();
    OrbitCoords coords;
    coords.x.assign(coords_size(ctx), Int(0));
    for (int wi = 0; wi < ctx.level_count(); ++wi) {
        const auto& wlv = ctx.level(wi);
        TensorElement rest = zero_tensor(*wlv.gv, ctx.rank());
        for (int li = 0; li < wi; ++li) {
            const auto& vlv = ctx.level(li);
            TensorElement nv = level_lift(ctx, coords, li);
            if (nv.is_zero()) continue;
            for (int h : g.fixed_cosets(ctx.H(), vlv.v, wlv.v)) {
                int wh = g.conj_sub(g.group().inv(h), wlv.v);
                rest += act(g, h, frobenius_lift(g, nv, g.cosets(g.full_id(), wh)), *wlv.gv);
            }
        }
        auto it = a.comp.find(wlv.v);
        TensorElement target =
            it == a.comp.end() ? zero_tensor(*wlv.gv, ctx.rank())
                               : detail::reindex_space(it->second, *wlv.gv);
        target -= rest;
        auto sol = solve_transfer(wlv, target);
        if (!sol)
            throw verification_error(
                "ghost_preimage: not a ghost image (transfer peel failed at subgroup {" +
                std::to_string(wlv.v) + "})");
        int off = level_offset(ctx, wi);
        for (size_t o = 0; o < sol->size(); ++o) coords.x[off + o] = (*sol)[o];
    }
    return coords;
}

/// Flatten a ghost vector to integer coordinates: per canonical level, the
/// coefficients of all |Y|^{|G/V|} index words in lexicographic order.
inline std::vector<Int> flatten_ghost(const WittContext& ctx, const GhostVector& a) {
    std::vector<Int> out;
    for (const auto& lv : ctx.levels()) {
        const int len = lv.gv->count();
        long dim = 1;
        for (int i = 0; i < len; ++i) dim *= ctx.rank();
        std::vector<Int> block(dim, Int(0));
        auto it = a.comp.find(lv.v);
        if (it != a.comp.end()) {
            const TensorElement t = detail::reindex_space(it->second, *lv.gv);
            for (const auto& [w, c] : t.terms) {
                long idx = 0;
                for (int p = 0; p < len; ++p) idx = idx * ctx.rank() + w[p];
                block[idx] = c;
            }
        }
        out.insert(out.end(), block.begin(), block.end());
    }
    return out;
}

/// Context-independent coordinates of the full S-indexed family: for every
/// member U of S in id order, the component over the cached default G/U
/// table. Two contexts with different canonical or coset representative
/// choices flatten equal families to equal vectors.
inline std::vector<Int> flatten_full_family(const WittContext& ctx, const GhostVector& a) {
    std::vector<Int> out;
    for (int u : ctx.S().members) {
        const CosetTable& gu = ctx.G().cosets(ctx.G().full_id(), u);
        const TensorElement t = detail::reindex_space(component_at(ctx, a, u), gu);
        const int len = gu.count();
        long dim = 1;
        for (int i = 0; i < len; ++i) dim *= ctx.rank();
        std::vector<Int> block(dim, Int(0));
        for (const auto& [w, c] : t.terms) {
            long idx = 0;
            for (int p = 0; p < len; ++p) idx = idx * ctx.rank() + w[p];
            block[idx] = c;
        }
        out.insert(out.end(), block.begin(), block.end());
    }
    return out;
}

/// Classical truncated p-typical ghost components sum_{0<=i<=j} p^i a_i^{p^{j-i}};
/// an independent test oracle.
inline std::vector<Int> classical_ghost_reference(long p, int n, const std::vector<Int>& a) {
    std::vector<Int> w(n, Int(0));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i <= j; ++i) {
            Int pi, ai;
            mpz_ui_pow_ui(pi.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(i));
            unsigned long e = 1;
            for (int t = 0; t < j - i; ++t) e *= static_cast<unsigned long>(p);
            mpz_pow_ui(ai.get_mpz_t(), a[i].get_mpz_t(), e);
            w[j] += pi * ai;
        }
    }
    return w;
}

// ---------------------------------------------------------------------------
// Ghost-level operators ("tilde" maps). These act on ghost vectors directly
// and define the Witt operators by lifting; they also serve as the
// verification side of each operator's defining square.
// ---------------------------------------------------------------------------

/// Restriction of the equivariant family to subgroups of K, i.e. the ghost
/// Frobenius gh^S_{H<=G} -> gh^{S|K}_{K<=G}.
inline GhostVector tilde_frobenius(const WittContext& src, const WittContext& dst,
                                   const GhostVector& a) {
    GhostVector out;
    for (const auto& lv : dst.levels())
        out.comp.emplace(lv.v, detail::reindex_space(component_at(src, a, lv.v), *lv.gv));
    return out;
}

/// Ghost Verschiebung: tilde_V(a)_W = sum_{hK in (H/K)^W} h . a_{W^h}.
inline GhostVector tilde_verschiebung(const WittContext& src, const WittContext& dst,
                                      const GhostVector& a) {
    const GroupCtx& g = dst.G();
    const int k = src.H();
    GhostVector out;
    for (const auto& lv : dst.levels()) {
        TensorElement acc = zero_tensor(*lv.gv, dst.rank());
        for (int h : g.fixed_cosets(dst.H(), k, lv.v)) {
            int wh = g.conj_sub(g.group().inv(h), lv.v);
            acc += act(g, h, component_at(src, a, wh), *lv.gv);
        }
        out.comp.emplace(lv.v, std::move(acc));
    }
    return out;
}

/// Ghost conjugation by g: component at U of the target is g . a_{U^g}.
inline GhostVector tilde_conjugation(const WittContext& src, const WittContext& dst, int g_elem,
                                     const GhostVector& a) {
    const GroupCtx& g = dst.G();
    GhostVector out;
    for (const auto& lv : dst.levels()) {
        int ug = g.conj_sub(g.group().inv(g_elem), lv.v);
        out.comp.emplace(lv.v, act(g, g_elem, component_at(src, a, ug), *lv.gv));
    }
    return out;
}

/// Ghost truncation: the projection onto components indexed by S'.
inline GhostVector tilde_truncation(const WittContext& src, const WittContext& dst,
                                    const GhostVector& a) {
    GhostVector out;
    for (const auto& lv : dst.levels())
        out.comp.emplace(lv.v, detail::reindex_space(component_at(src, a, lv.v), *lv.gv));
    return out;
}

/// Ghost Teichmueller: components f_{G/H}(m^{(x) H/U}) for m over G/H.
inline GhostVector tilde_teichmuller(const WittContext& ctx, const TensorElement& m) {
    const GroupCtx& g = ctx.G();
    GhostVector out;
    if (ctx.level_count() == 0) return out;
    const TensorElement mh = detail::reindex_space(m, ctx.gv(ctx.H()));
    for (const auto& lv : ctx.levels()) {
        const CosetTable& hu = g.cosets(ctx.H(), lv.v);
        out.comp.emplace(lv.v,
                         tensor_power_reindexed(g, mh, *lv.gv, hu, ctx.term_bound()));
    }
    return out;
}

/// Componentwise shuffle product into coefficients Y x Y'; the pair (i, j)
/// is encoded as the generator i * |Y'| + j.
inline GhostVector tilde_star(const WittContext& a_ctx, const WittContext& b_ctx,
                              const WittContext& dst, const GhostVector& a,
                              const GhostVector& b) {
    GhostVector out;
    for (const auto& lv : dst.levels()) {
        TensorElement acc = zero_tensor(*lv.gv, dst.rank());
        const TensorElement ta = detail::reindex_space(component_at(a_ctx, a, lv.v), *lv.gv);
        const TensorElement tb = detail::reindex_space(component_at(b_ctx, b, lv.v), *lv.gv);
        for (const auto& [wa, ca] : ta.terms)
            for (const auto& [wb, cb] : tb.terms) {
                Word w(lv.gv->count());
                for (int p = 0; p < lv.gv->count(); ++p)
                    w[p] = static_cast<uint8_t>(wa[p] * b_ctx.rank() + wb[p]);
                acc.add_term(w, ca * cb);
            }
        out.comp.emplace(lv.v, std::move(acc));
    }
    return out;
}

/// Apply a coefficient pushforward to every component.
inline GhostVector ghost_pushforward(const WittContext& src, const WittContext& dst,
                                     const IntMatrix& a_mat, const GhostVector& a) {
    GhostVector out;
    for (const auto& lv : dst.levels()) {
        TensorElement t = detail::reindex_space(component_at(src, a, lv.v), *lv.gv);
        out.comp.emplace(lv.v, pushforward(a_mat, t, dst.term_bound()));
    }
    return out;
}

} // namespace gwitt
