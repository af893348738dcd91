/**
 * @file witt.hpp
 * @brief Witt vector groups W^S_{H<=G}(Z; M) and their operators.
 *
 * Free coefficients Z(Y) are handled through orbit coordinates (one chart
 * per canonical subgroup, Prop-style splitting into N_H(V)-orbit bases);
 * finitely presented coefficients M = Z^b / A Z^a are handled by building the
 * free model over Z^b, extracting the relation lattice from the reflexive
 * coequaliser pair p(x,y) = x + Ay, q(x,y) = x on Z^{b+a}, and reducing to
 * Smith normal form residues. Addition is free in these charts; everything
 * non-additive (the ghost map, Teichmueller representatives) goes through
 * ghost vectors.
 */
#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gwitt/errors.hpp"
#include "gwitt/ghost.hpp"
#include "gwitt/group.hpp"
#include "gwitt/linalg.hpp"
#include "gwitt/tensor.hpp"
#include "gwitt/truncation.hpp"

namespace gwitt {

/// A finitely presented abelian group M = Z^rank / (column span of rel).
struct AbPresentation {
    int rank = 1;
    IntMatrix rel; ///< rank rows, one column per relation

    AbPresentation() : rel(1, 0) {}
    AbPresentation(int rank_, IntMatrix rel_) : rank(rank_), rel(std::move(rel_)) {
        if (rel.rows() != rank) throw validation_error("presentation: relation rows != rank");
    }

    static AbPresentation free_of_rank(int b) { return AbPresentation(b, IntMatrix(b, 0)); }
    static AbPresentation cyclic(long n) { // Z/n (n = 0 gives Z)
        IntMatrix r(1, n == 0 ? 0 : 1);
        if (n != 0) r.at(0, 0) = n;
        return AbPresentation(1, std::move(r));
    }

    bool operator==(const AbPresentation& o) const { return rank == o.rank && rel == o.rel; }
};

/// Presentation of M (x) M' from presentations of the factors; generator
/// (i, j) is encoded as i * rank(M') + j.
inline AbPresentation tensor_presentation(const AbPresentation& a, const AbPresentation& b) {
    const int r = a.rank * b.rank;
    IntMatrix rel(r, a.rel.cols() * b.rank + b.rel.cols() * a.rank);
    int col = 0;
    for (int ca = 0; ca < a.rel.cols(); ++ca)
        for (int j = 0; j < b.rank; ++j, ++col)
            for (int i = 0; i < a.rank; ++i) rel.at(i * b.rank + j, col) = a.rel.at(i, ca);
    for (int cb = 0; cb < b.rel.cols(); ++cb)
        for (int i = 0; i < a.rank; ++i, ++col)
            for (int j = 0; j < b.rank; ++j) rel.at(i * b.rank + j, col) = b.rel.at(j, cb);
    return AbPresentation(r, std::move(rel));
}

/// Presentation of M^{(x) m}; a generator is a base-rank(M) word read
/// big-endian over the m tensor positions.
inline AbPresentation power_presentation(const AbPresentation& a, int m) {
    AbPresentation out = AbPresentation::free_of_rank(1);
    for (int i = 0; i < m; ++i) out = tensor_presentation(out, a);
    return out;
}

/// Invariant factors of a finitely presented abelian group, 1s dropped,
/// one 0 per free summand.
inline std::vector<Int> presentation_factors(const AbPresentation& p) {
    return snf(p.rel).cokernel_factors;
}

/// Witt vectors with free coefficients Z(Y): orbit bases per canonical
/// subgroup and the ghost matrix of the embedding w^f.
struct WittFreeGroup {
    WittContextPtr ctx;
    int rank = 0;              ///< total number of orbit coordinates
    std::vector<int> offsets;  ///< per-level start within the coordinate vector

    const IntMatrix& ghost_matrix() const {
        if (!ghost_mat_) {
            int gdim = static_cast<int>(flatten_ghost(*ctx, GhostVector{}).size());
            IntMatrix m(gdim, rank);
            for (int c = 0; c < rank; ++c) {
                OrbitCoords unit;
                unit.x.assign(rank, Int(0));
                unit.x[c] = 1;
                m.set_column(c, flatten_ghost(*ctx, ghost_linear(*ctx, unit)));
            }
            ghost_mat_ = std::move(m);
        }
        return *ghost_mat_;
    }

private:
    mutable std::optional<IntMatrix> ghost_mat_;
};

inline WittFreeGroup build_free(WittContextPtr ctx) {
    WittFreeGroup g;
    g.ctx = std::move(ctx);
    int n = 0;
    for (const auto& lv : g.ctx->levels()) {
        g.offsets.push_back(n);
        n += static_cast<int>(lv.orbits.reps.size());
    }
    g.rank = n;
    return g;
}

/// Witt vectors with finitely presented coefficients: the free model over
/// Z^b together with the relation lattice and its Smith normal form.
/// Free coefficients are the no-relation special case.
struct WittGroupFP {
    AbPresentation pres;
    WittFreeGroup free_model;
    WittContextPtr big_ctx;   ///< Z^{b+a} model context (null when a = 0)
    IntMatrix relations;      ///< free_model.rank rows, one column per relation vector
    SmithResult smith;        ///< of `relations`
    std::vector<int> kept;    ///< Smith coordinates with nontrivial quotient
    std::vector<Int> torsion; ///< per kept coordinate: d_i > 1, or 0 = free

    int residue_rank() const { return static_cast<int>(kept.size()); }
    const WittContext& ctx() const { return *free_model.ctx; }

    /// Invariant factors: 1s dropped, one 0 per free summand (= torsion).
    std::vector<Int> invariant_factors() const { return torsion; }

    bool is_finite() const {
        for (const Int& t : torsion)
            if (t == 0) return false;
        return true;
    }
    Int order() const {
        Int n = 1;
        for (const Int& t : torsion) {
            if (t == 0) throw validation_error("order: group is infinite");
            n *= t;
        }
        return n;
    }

    /// Canonical residue of a free-model coordinate vector.
    std::vector<Int> reduce(const std::vector<Int>& x) const {
        std::vector<Int> z = smith.u.apply(x);
        std::vector<Int> out(kept.size());
        for (size_t j = 0; j < kept.size(); ++j)
            out[j] = torsion[j] == 0 ? z[kept[j]] : pos_mod(z[kept[j]], torsion[j]);
        return out;
    }
    /// Some free-model coordinate vector mapping to the given residue.
    std::vector<Int> lift(const std::vector<Int>& res) const {
        std::vector<Int> z(free_model.rank, Int(0));
        for (size_t j = 0; j < kept.size(); ++j) z[kept[j]] = res[j];
        return smith.u_inv.apply(z);
    }

    bool same_group(const WittGroupFP& o) const {
        return pres == o.pres && free_model.ctx->same_shape(*o.free_model.ctx);
    }
};

struct WittElement {
    const WittGroupFP* grp = nullptr;
    std::vector<Int> res; ///< canonical residue coordinates

    bool operator==(const WittElement& o) const {
        if (grp != o.grp && !(grp && o.grp && grp->same_group(*o.grp)))
            throw validation_error("comparing elements of different Witt groups");
        return res == o.res;
    }
};

inline WittElement zero_element(const WittGroupFP& g) {
    return {&g, std::vector<Int>(g.residue_rank(), Int(0))};
}

inline WittElement element_from_free(const WittGroupFP& g, const std::vector<Int>& free_coords) {
    return {&g, g.reduce(free_coords)};
}

inline WittElement add(const WittElement& a, const WittElement& b) {
    if (!a.grp->same_group(*b.grp)) throw validation_error("add: group mismatch");
    std::vector<Int> z(a.res.size());
    for (size_t i = 0; i < z.size(); ++i) {
        z[i] = a.res[i] + b.res[i];
        if (a.grp->torsion[i] != 0) z[i] = pos_mod(z[i], a.grp->torsion[i]);
    }
    return {a.grp, std::move(z)};
}

inline WittElement neg(const WittElement& a) {
    std::vector<Int> z(a.res.size());
    for (size_t i = 0; i < z.size(); ++i) {
        z[i] = -a.res[i];
        if (a.grp->torsion[i] != 0) z[i] = pos_mod(z[i], a.grp->torsion[i]);
    }
    return {a.grp, std::move(z)};
}

inline WittElement sub(const WittElement& a, const WittElement& b) { return add(a, neg(b)); }

/// Build W^S_{H<=G}(Z; M) for M presented by `pres`. Relation vectors come
/// from the reflexive coequaliser pair on Z^{b+a}: for every orbit-basis
/// generator y of the Z^{b+a} model, the ghost image is pushed forward along
/// p and q and the difference is solved back into the Z^b orbit chart.
inline WittGroupFP build_fp(const GroupCtx& g, const TruncationSet& s, const AbPresentation& pres,
                            long term_bound = kDefaultTermBound, bool check_fixed = true,
                            std::map<int, std::vector<int>> rep_overrides = {}) {
    WittGroupFP out;
    out.pres = pres;
    GeneratorSet yb{pres.rank, {}};
    auto ctx = std::make_shared<WittContext>(g, s, yb, term_bound, check_fixed, rep_overrides);
    out.free_model = build_free(ctx);
    const int n = out.free_model.rank;

    const int a = pres.rel.cols();
    if (a == 0 || n == 0) {
        out.relations = IntMatrix(n, 0);
    } else {
        GeneratorSet ybig{pres.rank + a, {}};
        out.big_ctx = std::make_shared<WittContext>(g, s, ybig, term_bound, check_fixed,
                                                    rep_overrides);
        IntMatrix p(pres.rank, pres.rank + a), q(pres.rank, pres.rank + a);
        for (int i = 0; i < pres.rank; ++i) p.at(i, i) = q.at(i, i) = 1;
        for (int i = 0; i < pres.rank; ++i)
            for (int j = 0; j < a; ++j) p.at(i, pres.rank + j) = pres.rel.at(i, j);

        std::vector<std::vector<Int>> cols;
        const int big_n = coords_size(*out.big_ctx);
        int big_off = 0;
        for (int li = 0; li < out.big_ctx->level_count(); ++li) {
            const auto& lv = out.big_ctx->level(li);
            for (size_t o = 0; o < lv.orbits.reps.size(); ++o) {
                OrbitCoords unit;
                unit.x.assign(big_n, Int(0));
                unit.x[big_off + static_cast<int>(o)] = 1;
                GhostVector w = ghost_linear(*out.big_ctx, unit);
                GhostVector rel = ghost_pushforward(*out.big_ctx, *ctx, p, w);
                rel -= ghost_pushforward(*out.big_ctx, *ctx, q, w);
                if (rel.is_zero()) continue;
                cols.push_back(ghost_preimage(*ctx, rel).x);
            }
            big_off += static_cast<int>(lv.orbits.reps.size());
        }
        out.relations = IntMatrix(n, static_cast<int>(cols.size()));
        for (int c = 0; c < static_cast<int>(cols.size()); ++c) out.relations.set_column(c, cols[c]);
    }
    out.smith = snf(out.relations);
    for (int i = 0; i < n; ++i) {
        Int d = i < static_cast<int>(out.smith.diag.size()) ? out.smith.diag[i] : Int(0);
        if (d == 1) continue;
        out.kept.push_back(i);
        out.torsion.push_back(d);
    }
    return out;
}

inline WittGroupFP build_fp(const GroupCtx& g, const TruncationSet& s, long cyclic_order,
                            long term_bound = kDefaultTermBound) {
    return build_fp(g, s, AbPresentation::cyclic(cyclic_order), term_bound);
}

/// q : prod_V M^{(x) G/V} ->> W. Components are Z^b lifts of classes in M;
/// two lifts of the same class reduce to the same residue.
inline WittElement from_components(const WittGroupFP& g, const ComponentFamily& n) {
    GhostVector w = ghost_map(g.ctx(), n);
    return element_from_free(g, ghost_preimage(g.ctx(), w).x);
}

inline GhostVector ghost_of(const WittElement& x) {
    return ghost_linear(x.grp->ctx(), OrbitCoords{x.grp->lift(x.res)});
}

namespace detail {
/// Transport free-model coordinates along g . (-): each level V goes to the
/// canonical representative of the H_dst-class of gVg^-1. With g = e this is
/// the Verschiebung chart map (sum over source classes fusing in H_dst).
inline std::vector<Int> transport_coords(const WittContext& src, const WittContext& dst,
                                         int g_elem, const std::vector<Int>& x) {
    const GroupCtx& g = src.G();
    std::vector<Int> out(coords_size(dst), Int(0));
    for (int li = 0; li < src.level_count(); ++li) {
        const auto& lv = src.level(li);
        int off = level_offset(src, li);
        int gv_id = g.conj_sub(g_elem, lv.v);
        int target = g.canonical_in(dst.H(), gv_id);
        auto k = g.conjugator_in(dst.H(), gv_id, target);
        if (!k) throw verification_error("transport: class fusion without conjugator");
        int move = g.group().mul(*k, g_elem);
        int dli = dst.level_of(target);
        int doff = level_offset(dst, dli);
        const auto& dlv = dst.level(dli);
        for (size_t o = 0; o < lv.orbits.reps.size(); ++o) {
            if (x[off + o] == 0) continue;
            Word w = detail::act_word(g, move, lv.orbits.reps[o], *lv.gv, *dlv.gv);
            out[doff + dlv.orbits.orbit_of.at(w)] += x[off + o];
        }
    }
    return out;
}

inline void require_same_coeff(const WittGroupFP& a, const WittGroupFP& b, const char* op) {
    if (!(a.pres == b.pres)) throw validation_error(std::string(op) + ": coefficient mismatch");
}
} // namespace detail

/// Frobenius F^H_K: unique lift of the ghost-level restriction+projection.
/// `dst` must be the group over (K, S|_K) with the same coefficients.
inline WittElement frobenius(const WittElement& x, const WittGroupFP& dst) {
    const WittContext& src = x.grp->ctx();
    const WittContext& d = dst.ctx();
    detail::require_same_coeff(*x.grp, dst, "frobenius");
    if (!src.G().sub(d.H()).subset_of(src.G().sub(src.H())))
        throw validation_error("frobenius: K not contained in H");
    GhostVector a = tilde_frobenius(src, d, ghost_of(x));
    return element_from_free(dst, ghost_preimage(d, a).x);
}

/// Verschiebung V^H_K: the sum-over-fused-classes chart map on orbit
/// coordinates (ghost-side transfer after embedding).
inline WittElement verschiebung(const WittElement& x, const WittGroupFP& dst) {
    const WittContext& src = x.grp->ctx();
    const WittContext& d = dst.ctx();
    detail::require_same_coeff(*x.grp, dst, "verschiebung");
    if (!src.G().sub(src.H()).subset_of(src.G().sub(d.H())))
        throw validation_error("verschiebung: K not contained in H");
    std::vector<Int> y =
        detail::transport_coords(src, d, src.G().group().identity(), x.grp->lift(x.res));
    return element_from_free(dst, y);
}

/// Conjugation c_g into the group over (gHg^-1, gS).
inline WittElement conjugation(const WittElement& x, int g_elem, const WittGroupFP& dst) {
    const WittContext& src = x.grp->ctx();
    const WittContext& d = dst.ctx();
    detail::require_same_coeff(*x.grp, dst, "conjugation");
    std::vector<Int> y = detail::transport_coords(src, d, g_elem, x.grp->lift(x.res));
    return element_from_free(dst, y);
}

/// Truncation R_{S'}: projection of orbit coordinates onto the levels of S'.
inline WittElement truncate(const WittElement& x, const WittGroupFP& dst) {
    const WittContext& src = x.grp->ctx();
    const WittContext& d = dst.ctx();
    detail::require_same_coeff(*x.grp, dst, "truncate");
    if (!sub_truncation(d.S(), src.S())) throw validation_error("truncate: S' not a subset of S");
    std::vector<Int> xf = x.grp->lift(x.res);
    std::vector<Int> y(coords_size(d), Int(0));
    for (int dli = 0; dli < d.level_count(); ++dli) {
        int sli = src.level_of(d.level(dli).v);
        int n = static_cast<int>(d.level(dli).orbits.reps.size());
        for (int o = 0; o < n; ++o) y[level_offset(d, dli) + o] = xf[level_offset(src, sli) + o];
    }
    return element_from_free(dst, y);
}

/// Teichmueller map tau_{G/H}: non-additive, natural; ghost components are
/// f_{G/H}(m^{(x) H/U}). Zero for the empty truncation set.
inline WittElement teichmuller(const WittGroupFP& g, const TensorElement& m) {
    if (g.ctx().level_count() == 0) return zero_element(g);
    ComponentFamily n;
    n.comp.emplace(g.ctx().H(), m);
    return from_components(g, n);
}

/// Additive Teichmueller variant tau^f: inclusion of the H-component into the
/// orbit chart (free coefficients; no dependence on coset representatives).
inline WittElement teichmuller_linear(const WittGroupFP& g, const TensorElement& m) {
    const WittContext& ctx = g.ctx();
    if (ctx.level_count() == 0) return zero_element(g);
    std::vector<Int> y(g.free_model.rank, Int(0));
    int li = ctx.level_of(ctx.H());
    const auto& lv = ctx.level(li);
    const TensorElement mh = detail::reindex_space(m, *lv.gv);
    for (const auto& [w, c] : mh.terms) y[level_offset(ctx, li) + lv.orbits.orbit_of.at(w)] += c;
    return element_from_free(g, y);
}

/// External product x (star) y into coefficients M (x) M'. Computed on ghost
/// vectors by the componentwise shuffle product, then pulled back; on
/// finitely presented coefficients this acts on lifts and reduces, which is
/// lift-independent by bilinearity.
inline WittElement external_product(const WittElement& x, const WittElement& y,
                                    const WittGroupFP& dst) {
    const WittContext& a = x.grp->ctx();
    const WittContext& b = y.grp->ctx();
    const WittContext& d = dst.ctx();
    if (a.H() != b.H() || a.H() != d.H() || !(a.S() == b.S()) || !(a.S() == d.S()))
        throw validation_error("external_product: context mismatch");
    if (dst.pres.rank != x.grp->pres.rank * y.grp->pres.rank)
        throw validation_error("external_product: target coefficient rank mismatch");
    GhostVector ab = tilde_star(a, b, d, ghost_of(x), ghost_of(y));
    return element_from_free(dst, ghost_preimage(d, ab).x);
}

/// Multiplicative unit tau_{G/H}(1) for rank-1 coefficients.
inline WittElement witt_one(const WittGroupFP& g) {
    if (g.pres.rank != 1) throw validation_error("witt_one: rank-1 coefficients required");
    const WittContext& ctx = g.ctx();
    if (ctx.level_count() == 0) return zero_element(g);
    Word w(ctx.gv(ctx.H()).count(), 0);
    return teichmuller(g, monomial(ctx.gv(ctx.H()), 1, w));
}

/// Ring multiplication for M = Z (rank-1) coefficients: the external product
/// followed by the identification Z (x) Z = Z.
inline WittElement ring_multiply(const WittElement& x, const WittElement& y,
                                 const WittGroupFP& g) {
    return external_product(x, y, g);
}

/// Multiplication table on the orbit-chart generators of W(Z; Z); entry
/// (i, j) lists the coordinates of e_i * e_j.
inline std::vector<std::vector<std::vector<Int>>> ring_structure(const WittGroupFP& g) {
    if (g.pres.rank != 1 || g.pres.rel.cols() != 0)
        throw validation_error("ring_structure: requires M = Z");
    const int n = g.free_model.rank;
    std::vector<std::vector<std::vector<Int>>> table(n);
    for (int i = 0; i < n; ++i) {
        std::vector<Int> ei(n, Int(0));
        ei[i] = 1;
        WittElement xi = element_from_free(g, ei);
        for (int j = 0; j < n; ++j) {
            std::vector<Int> ej(n, Int(0));
            ej[j] = 1;
            table[i].push_back(ring_multiply(xi, element_from_free(g, ej), g).res);
        }
    }
    return table;
}

/// The natural isomorphism W^S_{H<=G}(Z; M) = W^S_{H<=H}(Z; M^{(x) G/H}).
/// `dst` lives over H realized as a standalone group (element map old<->new
/// given by `elem_map`); its coefficients must be power_presentation(pres, |G/H|),
/// generators encoded base-rank(M) big-endian over the G/H representatives.
inline WittElement hgh_image(const WittElement& x, const WittGroupFP& dst,
                             const std::vector<int>& elem_map) {
    const WittContext& src = x.grp->ctx();
    const WittContext& d = dst.ctx();
    const GroupCtx& g = src.G();
    const CosetTable& gh = src.gv(src.H());
    const int m = gh.count();
    const int b = src.rank();
    if (dst.pres.rank != d.rank())
        throw validation_error("hgh_image: target rank mismatch");

    GhostVector a = ghost_of(x);
    GhostVector out;
    for (const auto& lv : d.levels()) {
        // Identify the level subgroup inside the original ambient group.
        std::vector<int> old_elems;
        for (int e : d.G().sub(lv.v).elems) old_elems.push_back(elem_map[e]);
        std::sort(old_elems.begin(), old_elems.end());
        int u = g.sub_id_of(old_elems);
        const TensorElement t = component_at(src, a, u);
        const CosetTable& gu = *t.space;
        TensorElement conv = zero_tensor(*lv.gv, d.rank());
        for (const auto& [w, c] : t.terms) {
            Word nw(lv.gv->count());
            for (int p = 0; p < lv.gv->count(); ++p) {
                int s_old = elem_map[lv.gv->rep(p)];
                long letter = 0;
                for (int i = 0; i < m; ++i)
                    letter = letter * b + w[gu.coset_of(g.group().mul(gh.rep(i), s_old))];
                nw[p] = static_cast<uint8_t>(letter);
            }
            conv.add_term(nw, c);
        }
        out.comp.emplace(lv.v, std::move(conv));
    }
    return element_from_free(dst, ghost_preimage(d, out).x);
}

/// All elements of a finite group, in lexicographic residue order.
inline std::vector<WittElement> enumerate_elements(const WittGroupFP& g) {
    if (!g.is_finite()) throw validation_error("enumerate_elements: group is infinite");
    std::vector<WittElement> out;
    std::vector<Int> z(g.residue_rank(), Int(0));
    while (true) {
        out.push_back({&g, z});
        int i = g.residue_rank() - 1;
        while (i >= 0) {
            z[i] += 1;
            if (z[i] < g.torsion[i]) break;
            z[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return out;
}

} // namespace gwitt
