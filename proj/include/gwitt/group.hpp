/**
 * @file group.hpp
 * @brief Finite group arithmetic: Cayley tables, subgroup lattices, cosets,
 *        conjugacy classes of subgroups, double cosets, tables of marks.
 *
 * Everything is deterministic: element order is fixed at construction
 * (lexicographic on images for permutation input, the given order for Cayley
 * input), subgroups are kept as strictly sorted element sets, and every
 * representative choice is the minimal element index unless overridden.
 */
#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gwitt/errors.hpp"
#include "gwitt/linalg.hpp"

namespace gwitt {

constexpr int kDefaultGroupBound = 48;

class FiniteGroup {
public:
    FiniteGroup() = default;

    /// Build from a full Cayley table; validates associativity, unit, inverses.
    static FiniteGroup from_cayley(const std::vector<std::vector<int>>& table,
                                   std::vector<std::string> labels = {}) {
        FiniteGroup g;
        g.n_ = static_cast<int>(table.size());
        if (g.n_ == 0) throw validation_error("group: empty Cayley table");
        g.mul_ = table;
        for (const auto& row : table)
            if (static_cast<int>(row.size()) != g.n_)
                throw validation_error("group: Cayley table is not square");
        for (const auto& row : table)
            for (int x : row)
                if (x < 0 || x >= g.n_) throw validation_error("group: Cayley entry out of range");
        g.labels_ = std::move(labels);
        g.validate();
        return g;
    }

    /// Build from permutation generators on `degree` points (0-based images).
    /// Elements are enumerated by product closure and ordered lexicographically
    /// on image tuples, which puts the identity at index 0.
    static FiniteGroup from_permutations(int degree, const std::vector<std::vector<int>>& gens,
                                         int bound = kDefaultGroupBound) {
        using Perm = std::vector<int>;
        Perm id(degree);
        std::iota(id.begin(), id.end(), 0);
        std::set<Perm> elems{id};
        std::vector<Perm> queue{id};
        auto compose = [degree](const Perm& a, const Perm& b) { // (a*b)(x) = a(b(x))
            Perm c(degree);
            for (int x = 0; x < degree; ++x) c[x] = a[b[x]];
            return c;
        };
        while (!queue.empty()) {
            Perm p = queue.back();
            queue.pop_back();
            for (const Perm& s : gens) {
                Perm q = compose(p, s);
                if (elems.insert(q).second) {
                    if (static_cast<int>(elems.size()) > bound)
                        throw resource_error("group: generated group exceeds size bound " +
                                             std::to_string(bound));
                    queue.push_back(q);
                }
            }
        }
        std::vector<Perm> ordered(elems.begin(), elems.end()); // lexicographic via set order
        std::map<Perm, int> index;
        for (int i = 0; i < static_cast<int>(ordered.size()); ++i) index[ordered[i]] = i;
        std::vector<std::vector<int>> table(ordered.size(), std::vector<int>(ordered.size()));
        for (size_t a = 0; a < ordered.size(); ++a)
            for (size_t b = 0; b < ordered.size(); ++b)
                table[a][b] = index[compose(ordered[a], ordered[b])];
        return from_cayley(table);
    }

    int order() const { return n_; }
    int mul(int a, int b) const { return mul_[a][b]; }
    int inv(int a) const { return inv_[a]; }
    int identity() const { return e_; }
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); } // g x g^-1

    const std::vector<std::string>& labels() const { return labels_; }
    std::string label(int x) const {
        if (x < static_cast<int>(labels_.size())) return labels_[x];
        return "g" + std::to_string(x);
    }

private:
    void validate() {
        e_ = -1;
        for (int c = 0; c < n_; ++c) {
            bool unit = true;
            for (int a = 0; a < n_ && unit; ++a) unit = mul_[c][a] == a && mul_[a][c] == a;
            if (unit) { e_ = c; break; }
        }
        if (e_ < 0) throw validation_error("group: no two-sided identity");
        inv_.assign(n_, -1);
        for (int a = 0; a < n_; ++a) {
            for (int b = 0; b < n_; ++b)
                if (mul_[a][b] == e_ && mul_[b][a] == e_) { inv_[a] = b; break; }
            if (inv_[a] < 0) throw validation_error("group: element without two-sided inverse");
        }
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                for (int c = 0; c < n_; ++c)
                    if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]])
                        throw validation_error("group: Cayley table is not associative");
    }

    int n_ = 0, e_ = 0;
    std::vector<std::vector<int>> mul_;
    std::vector<int> inv_;
    std::vector<std::string> labels_;
};

/// A subgroup as a strictly sorted element-index set of a fixed parent group.
struct Subgroup {
    std::vector<int> elems;

    int order() const { return static_cast<int>(elems.size()); }
    bool contains(int x) const { return std::binary_search(elems.begin(), elems.end(), x); }
    bool subset_of(const Subgroup& o) const {
        return std::includes(o.elems.begin(), o.elems.end(), elems.begin(), elems.end());
    }
    bool operator==(const Subgroup& o) const { return elems == o.elems; }
    /// (order, element set) order used for all canonical choices.
    bool operator<(const Subgroup& o) const {
        if (elems.size() != o.elems.size()) return elems.size() < o.elems.size();
        return elems < o.elems;
    }
};

/// Closure of a nonempty element set under the group product.
inline Subgroup subgroup_generated(const FiniteGroup& g, const std::vector<int>& gens) {
    if (gens.empty()) throw validation_error("subgroup_generated: empty generator set");
    std::set<int> elems(gens.begin(), gens.end());
    elems.insert(g.identity());
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> cur(elems.begin(), elems.end());
        for (int a : cur)
            for (int b : cur)
                if (elems.insert(g.mul(a, b)).second) grew = true;
    }
    return Subgroup{std::vector<int>(elems.begin(), elems.end())};
}

inline Subgroup conjugate_subgroup(const FiniteGroup& g, int h, const Subgroup& v) {
    std::vector<int> out;
    out.reserve(v.elems.size());
    for (int x : v.elems) out.push_back(g.conj(h, x));
    std::sort(out.begin(), out.end());
    return Subgroup{std::move(out)};
}

/// Cosets x*by for x ranging over the subgroup `within` (by <= within).
/// Default representatives: the identity for the trivial coset, the minimal
/// element index otherwise; listed with the trivial coset first, the rest by
/// increasing representative. Explicit representatives may override this.
class CosetTable {
public:
    CosetTable() = default;
    CosetTable(const FiniteGroup& g, const Subgroup& within, const Subgroup& by,
               std::vector<int> rep_override = {})
        : within_(within), by_(by) {
        if (!by.subset_of(within)) throw validation_error("cosets: subgroup not contained in ambient");
        coset_of_.assign(g.order(), -1);
        std::vector<int> min_reps;
        for (int x : within_.elems) {
            if (coset_of_[x] >= 0) continue;
            int c = static_cast<int>(min_reps.size());
            int rep = x; // elems scanned in increasing order, so x is minimal in its coset
            for (int u : by_.elems) {
                int y = g.mul(x, u);
                coset_of_[y] = c;
                if (y == g.identity()) rep = y;
            }
            min_reps.push_back(rep);
        }
        if (rep_override.empty()) {
            rep_override = std::move(min_reps);
            // Trivial coset first, remaining cosets by increasing representative.
            std::sort(rep_override.begin(), rep_override.end());
            int idc = coset_of_[g.identity()];
            int idrep = -1;
            for (int r : rep_override)
                if (coset_of_[r] == idc) { idrep = r; break; }
            rep_override.erase(std::find(rep_override.begin(), rep_override.end(), idrep));
            rep_override.insert(rep_override.begin(), g.identity());
        }
        if (static_cast<int>(rep_override.size()) * by_.order() != within_.order())
            throw validation_error("cosets: representative list does not cover the coset space");
        std::vector<int> renumber(rep_override.size(), -1); // old coset -> new position
        for (int c = 0; c < static_cast<int>(rep_override.size()); ++c) {
            int r = rep_override[c];
            if (r < 0 || r >= g.order() || coset_of_[r] < 0)
                throw validation_error("cosets: representative outside ambient subgroup");
            if (renumber[coset_of_[r]] >= 0)
                throw validation_error("cosets: two representatives in one coset");
            renumber[coset_of_[r]] = c;
        }
        for (int& c : coset_of_)
            if (c >= 0) c = renumber[c];
        reps_ = std::move(rep_override);
    }

    int count() const { return static_cast<int>(reps_.size()); }
    int rep(int c) const { return reps_[c]; }
    const std::vector<int>& reps() const { return reps_; }
    int coset_of(int x) const { return coset_of_[x]; }
    const Subgroup& within() const { return within_; }
    const Subgroup& by() const { return by_; }

private:
    Subgroup within_, by_;
    std::vector<int> reps_;
    std::vector<int> coset_of_;
};

/// A finite group together with cached subgroup-lattice combinatorics.
/// Non-copyable so that cached CosetTable addresses stay valid.
class GroupCtx {
public:
    explicit GroupCtx(FiniteGroup g) : g_(std::move(g)) {
        enumerate_subgroups();
    }
    GroupCtx(const GroupCtx&) = delete;
    GroupCtx& operator=(const GroupCtx&) = delete;

    const FiniteGroup& group() const { return g_; }
    int full_id() const { return static_cast<int>(subs_.size()) - 1; }
    int trivial_id() const { return 0; }

    int sub_count() const { return static_cast<int>(subs_.size()); }
    const Subgroup& sub(int id) const { return subs_[id]; }
    const std::vector<Subgroup>& subgroups() const { return subs_; }

    int sub_id(const Subgroup& s) const {
        auto it = sub_index_.find(s.elems);
        if (it == sub_index_.end()) throw validation_error("unknown subgroup element set");
        return it->second;
    }
    int sub_id_of(const std::vector<int>& elems) const { return sub_id(Subgroup{elems}); }

    int generated_id(const std::vector<int>& gens) const {
        return sub_id(subgroup_generated(g_, gens));
    }

    int conj_sub(int h, int id) const { return sub_id(conjugate_subgroup(g_, h, subs_[id])); }

    /// All subgroup ids contained in `ambient`.
    std::vector<int> subs_below(int ambient) const {
        std::vector<int> out;
        for (int i = 0; i < sub_count(); ++i)
            if (subs_[i].subset_of(subs_[ambient])) out.push_back(i);
        return out;
    }

    /// Cosets of `by` within `within` (both subgroup ids), default representatives.
    const CosetTable& cosets(int within, int by) const {
        auto key = std::make_pair(within, by);
        auto it = coset_cache_.find(key);
        if (it == coset_cache_.end())
            it = coset_cache_.emplace(key, CosetTable(g_, subs_[within], subs_[by])).first;
        return it->second;
    }

    /// N_inside(v): elements h of `inside` with h v h^-1 = v.
    int normalizer(int v, int inside) const {
        auto key = std::make_pair(v, inside);
        auto it = norm_cache_.find(key);
        if (it != norm_cache_.end()) return it->second;
        std::vector<int> elems;
        for (int h : subs_[inside].elems)
            if (conjugate_subgroup(g_, h, subs_[v]) == subs_[v]) elems.push_back(h);
        int id = sub_id(Subgroup{elems});
        norm_cache_[key] = id;
        return id;
    }

    /// H-conjugacy classes of subgroups of H; each class sorted, canonical first.
    /// Classes ordered by decreasing subgroup order, then element set.
    const std::vector<std::vector<int>>& conjugacy_classes(int h) const {
        auto it = class_cache_.find(h);
        if (it != class_cache_.end()) return it->second;
        std::vector<int> pool = subs_below(h);
        std::vector<bool> seen(sub_count(), false);
        std::vector<std::vector<int>> classes;
        for (int v : pool) {
            if (seen[v]) continue;
            std::set<int> cls;
            for (int x : subs_[h].elems) cls.insert(conj_sub(x, v));
            std::vector<int> members(cls.begin(), cls.end()); // ids sorted; id order = (order, elems)
            for (int m : members) seen[m] = true;
            classes.push_back(std::move(members));
        }
        std::sort(classes.begin(), classes.end(), [this](const auto& a, const auto& b) {
            const Subgroup& sa = subs_[a.front()];
            const Subgroup& sb = subs_[b.front()];
            if (sa.order() != sb.order()) return sa.order() > sb.order();
            return sa.elems < sb.elems;
        });
        return class_cache_.emplace(h, std::move(classes)).first->second;
    }

    /// Canonical representative of the H-class of subgroup u.
    int canonical_in(int h, int u) const {
        for (const auto& cls : conjugacy_classes(h))
            for (int m : cls)
                if (m == u) return cls.front();
        throw validation_error("canonical_in: subgroup not below ambient");
    }

    /// Some x in `h` with x u x^-1 = target, if the two are h-conjugate.
    std::optional<int> conjugator_in(int h, int u, int target) const {
        for (int x : subs_[h].elems)
            if (conj_sub(x, u) == target) return x;
        return std::nullopt;
    }

    /// Representatives (in table order) of the fixed cosets (H/V)^U:
    /// cosets xV with x^-1 U x <= V. Empty unless U is subconjugate to V.
    std::vector<int> fixed_cosets(int h, int v, int u) const {
        const CosetTable& t = cosets(h, v);
        std::vector<int> out;
        for (int c = 0; c < t.count(); ++c) {
            int x = t.rep(c);
            int xi = g_.inv(x);
            bool fixed = true;
            for (int y : subs_[u].elems)
                if (!subs_[v].contains(g_.conj(xi, y))) { fixed = false; break; }
            if (fixed) out.push_back(x);
        }
        return out;
    }

    /// One minimal-element representative per double coset J\h/K inside H.
    std::vector<int> double_cosets(int h, int j, int k) const {
        std::vector<bool> seen(g_.order(), false);
        std::vector<int> out;
        for (int x : subs_[h].elems) {
            if (seen[x]) continue;
            out.push_back(x);
            for (int a : subs_[j].elems)
                for (int b : subs_[k].elems) seen[g_.mul(g_.mul(a, x), b)] = true;
        }
        return out;
    }

    bool subconjugate_in(int h, int u, int v) const {
        for (int x : subs_[h].elems)
            if (subs_[conj_sub(x, u)].subset_of(subs_[v])) return true;
        return false;
    }

private:
    void enumerate_subgroups() {
        std::set<std::vector<int>> found;
        std::vector<std::vector<int>> queue;
        auto insert = [&](const Subgroup& s) {
            if (found.insert(s.elems).second) queue.push_back(s.elems);
        };
        insert(subgroup_generated(g_, {g_.identity()}));
        for (int x = 0; x < g_.order(); ++x) insert(subgroup_generated(g_, {x}));
        while (!queue.empty()) {
            std::vector<int> base = queue.back();
            queue.pop_back();
            for (int x = 0; x < g_.order(); ++x) {
                if (std::binary_search(base.begin(), base.end(), x)) continue;
                std::vector<int> gens = base;
                gens.push_back(x);
                insert(subgroup_generated(g_, gens));
            }
        }
        for (auto& e : found) subs_.push_back(Subgroup{e});
        std::sort(subs_.begin(), subs_.end());
        for (int i = 0; i < static_cast<int>(subs_.size()); ++i) sub_index_[subs_[i].elems] = i;
    }

    FiniteGroup g_;
    std::vector<Subgroup> subs_;
    std::map<std::vector<int>, int> sub_index_;
    mutable std::map<std::pair<int, int>, CosetTable> coset_cache_;
    mutable std::map<std::pair<int, int>, int> norm_cache_;
    mutable std::map<int, std::vector<std::vector<int>>> class_cache_;
};

/// Table of marks of G: entry (U-class row, V-class column) = |(G/V)^U|,
/// classes ordered by decreasing subgroup order then element set.
inline IntMatrix table_of_marks(const GroupCtx& ctx) {
    const auto& classes = ctx.conjugacy_classes(ctx.full_id());
    const int m = static_cast<int>(classes.size());
    IntMatrix marks(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            marks.at(i, j) =
                static_cast<long>(ctx.fixed_cosets(ctx.full_id(), classes[j].front(), classes[i].front()).size());
    return marks;
}

/// Realize a subgroup as a standalone group. Returns the new group and the
/// element map new index -> old index (order preserved).
inline std::pair<FiniteGroup, std::vector<int>> as_group(const FiniteGroup& g, const Subgroup& h) {
    std::map<int, int> to_new;
    for (int i = 0; i < h.order(); ++i) to_new[h.elems[i]] = i;
    std::vector<std::vector<int>> table(h.order(), std::vector<int>(h.order()));
    for (int a = 0; a < h.order(); ++a)
        for (int b = 0; b < h.order(); ++b)
            table[a][b] = to_new.at(g.mul(h.elems[a], h.elems[b]));
    return {FiniteGroup::from_cayley(table), h.elems};
}

} // namespace gwitt
