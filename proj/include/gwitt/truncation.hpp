/**
 * @file truncation.hpp
 * @brief Truncation sets: upward-closed, conjugation-closed subgroup sets of
 *        an ambient subgroup H, with canonical class representatives.
 */
#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "gwitt/errors.hpp"
#include "gwitt/group.hpp"

namespace gwitt {

struct TruncationSet {
    int ambient = -1;          ///< subgroup id of H
    std::vector<int> members;  ///< sorted subgroup ids
    std::vector<int> canon;    ///< canonical class reps, decreasing order then element set

    bool contains(int id) const { return std::binary_search(members.begin(), members.end(), id); }
    bool operator==(const TruncationSet& o) const {
        return ambient == o.ambient && members == o.members;
    }
};

namespace detail {
inline std::vector<int> canon_of(const GroupCtx& ctx, int h, const std::vector<int>& members) {
    std::vector<int> canon;
    for (const auto& cls : ctx.conjugacy_classes(h))
        if (std::binary_search(members.begin(), members.end(), cls.front()))
            canon.push_back(cls.front());
    return canon; // classes are already ordered by decreasing order then element set
}
} // namespace detail

/// Validate a proposed member set as a truncation set for H. Reports the first
/// violated closure condition with a witness pair.
inline TruncationSet validate_truncation(const GroupCtx& ctx, int h, std::vector<int> proposed) {
    std::sort(proposed.begin(), proposed.end());
    proposed.erase(std::unique(proposed.begin(), proposed.end()), proposed.end());
    const Subgroup& hs = ctx.sub(h);
    for (int u : proposed)
        if (!ctx.sub(u).subset_of(hs))
            throw validation_error("truncation: member not contained in ambient subgroup");
    auto in = [&](int id) { return std::binary_search(proposed.begin(), proposed.end(), id); };
    for (int u : proposed) {
        for (int up : ctx.subs_below(h))
            if (ctx.sub(u).subset_of(ctx.sub(up)) && !in(up))
                throw validation_error("truncation: not upward closed, contains {" +
                                       std::to_string(u) + "} but not overgroup {" +
                                       std::to_string(up) + "}");
        for (int x : hs.elems) {
            int c = ctx.conj_sub(x, u);
            if (!in(c))
                throw validation_error("truncation: not closed under conjugation, member {" +
                                       std::to_string(u) + "} conjugated by element " +
                                       std::to_string(x) + " is missing");
        }
    }
    TruncationSet s;
    s.ambient = h;
    s.members = std::move(proposed);
    s.canon = detail::canon_of(ctx, h, s.members);
    return s;
}

/// The full truncation set S0 (all subgroups of H).
inline TruncationSet full_truncation(const GroupCtx& ctx, int h) {
    return validate_truncation(ctx, h, ctx.subs_below(h));
}

/// S = {H}.
inline TruncationSet top_truncation(const GroupCtx& ctx, int h) {
    return validate_truncation(ctx, h, {h});
}

inline TruncationSet empty_truncation(const GroupCtx& ctx, int h) {
    return validate_truncation(ctx, h, {});
}

/// S|_K = members of S contained in K.
inline TruncationSet restrict_truncation(const GroupCtx& ctx, const TruncationSet& s, int k) {
    if (!ctx.sub(k).subset_of(ctx.sub(s.ambient)))
        throw validation_error("restrict: K not contained in ambient");
    std::vector<int> keep;
    for (int u : s.members)
        if (ctx.sub(u).subset_of(ctx.sub(k))) keep.push_back(u);
    TruncationSet out;
    out.ambient = k;
    out.members = std::move(keep);
    out.canon = detail::canon_of(ctx, k, out.members);
    return out;
}

/// S \ K: members not subconjugate to K (again a truncation set for H).
inline TruncationSet remove_subconjugate(const GroupCtx& ctx, const TruncationSet& s, int k) {
    if (!ctx.sub(k).subset_of(ctx.sub(s.ambient)))
        throw validation_error("remove_subconjugate: K not contained in ambient");
    std::vector<int> keep;
    for (int u : s.members)
        if (!ctx.subconjugate_in(s.ambient, u, k)) keep.push_back(u);
    TruncationSet out;
    out.ambient = s.ambient;
    out.members = std::move(keep);
    out.canon = detail::canon_of(ctx, s.ambient, out.members);
    return out;
}

/// gS: member-wise conjugation; the ambient becomes gHg^-1.
inline TruncationSet conjugate_truncation(const GroupCtx& ctx, const TruncationSet& s, int g) {
    std::vector<int> members;
    members.reserve(s.members.size());
    for (int u : s.members) members.push_back(ctx.conj_sub(g, u));
    std::sort(members.begin(), members.end());
    int h2 = ctx.conj_sub(g, s.ambient);
    TruncationSet out;
    out.ambient = h2;
    out.members = std::move(members);
    out.canon = detail::canon_of(ctx, h2, out.members);
    return out;
}

/// S' subset of S test (same ambient).
inline bool sub_truncation(const TruncationSet& sp, const TruncationSet& s) {
    return sp.ambient == s.ambient &&
           std::includes(s.members.begin(), s.members.end(), sp.members.begin(), sp.members.end());
}

} // namespace gwitt
