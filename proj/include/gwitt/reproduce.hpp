/**
 * @file reproduce.hpp
 * @brief The d6-appendix golden computation: ghost basis of W_{D6}(Z; Z),
 *        the 16-row relation table for Z/3 coefficients under the pair
 *        p(a,b) = a + 3b, q(a,b) = a, and the resulting invariant factors,
 *        rendered in a fixed text format and diffed against embedded data.
 *
 * The computation is run twice: once on a pinned Cayley table whose element
 * order matches the classical presentation <r, s | r^3 = s^2 = e,
 * s r s^-1 = r^-1>, and once on the built-in permutation realization with a
 * different internal element order. The reports must agree bit for bit,
 * exercising the independence of the output from representative choices.
 */
#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "gwitt/ghost.hpp"
#include "gwitt/group.hpp"
#include "gwitt/io.hpp"
#include "gwitt/linalg.hpp"
#include "gwitt/witt.hpp"

namespace gwitt {

/// D6 with elements ordered e, r, r^2, s, sr, sr^2.
inline FiniteGroup pinned_d6() {
    auto idx = [](int k, int j) { return k * 3 + ((j % 3) + 3) % 3; };
    std::vector<std::vector<int>> table(6, std::vector<int>(6));
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 3; ++j)
            for (int kp = 0; kp < 2; ++kp)
                for (int jp = 0; jp < 3; ++jp)
                    table[idx(k, j)][idx(kp, jp)] = idx((k + kp) % 2, (kp ? -j : j) + jp);
    return FiniteGroup::from_cayley(table, {"e", "r", "r2", "s", "sr", "sr2"});
}

inline const char* d6_appendix_golden() {
    return
        "canonical subgroups by decreasing order: |6| |3| |2| |1|\n"
        "ghost basis:\n"
        "(1, 1, 1, 1)\n"
        "(0, 2, 0, 2)\n"
        "(0, 0, 1, 3)\n"
        "(0, 0, 0, 6)\n"
        "relation table (W, u, v, p, q):\n"
        "|6| 1 0 (1, 1, 1, 1) (1, 1, 1, 1)\n"
        "|6| 0 1 (3, 9, 27, 729) (0, 0, 0, 0)\n"
        "|3| 2 0 (0, 2, 0, 2) (0, 2, 0, 2)\n"
        "|3| 1 1 (0, 6, 0, 54) (0, 0, 0, 0)\n"
        "|3| 0 2 (0, 18, 0, 1458) (0, 0, 0, 0)\n"
        "|2| 3 0 (0, 0, 1, 3) (0, 0, 1, 3)\n"
        "|2| 2 1 (0, 0, 3, 27) (0, 0, 0, 0)\n"
        "|2| 1 2 (0, 0, 9, 243) (0, 0, 0, 0)\n"
        "|2| 0 3 (0, 0, 27, 2187) (0, 0, 0, 0)\n"
        "|1| 6 0 (0, 0, 0, 6) (0, 0, 0, 6)\n"
        "|1| 5 1 (0, 0, 0, 18) (0, 0, 0, 0)\n"
        "|1| 4 2 (0, 0, 0, 54) (0, 0, 0, 0)\n"
        "|1| 3 3 (0, 0, 0, 162) (0, 0, 0, 0)\n"
        "|1| 2 4 (0, 0, 0, 486) (0, 0, 0, 0)\n"
        "|1| 1 5 (0, 0, 0, 1458) (0, 0, 0, 0)\n"
        "|1| 0 6 (0, 0, 0, 4374) (0, 0, 0, 0)\n"
        "invariant factors: 3, 3, 9\n"
        "order: 81\n"
        "component-count check: 81\n";
}

namespace detail {
inline std::string int_row(const std::vector<Int>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].get_str();
    }
    return s + ")";
}
} // namespace detail

/// Build the d6-appendix reference report for one realization of D6.
inline std::string d6_appendix_report(const GroupCtx& g, long term_bound = kDefaultTermBound) {
    std::ostringstream out;
    TruncationSet s = full_truncation(g, g.full_id());
    auto free1 = std::make_shared<WittContext>(g, s, GeneratorSet{1, {}}, term_bound);
    WittFreeGroup wz = build_free(free1);

    out << "canonical subgroups by decreasing order:";
    for (const auto& lv : free1->levels()) out << " |" << g.sub(lv.v).order() << "|";
    out << "\n";

    out << "ghost basis:\n";
    const IntMatrix& gm = wz.ghost_matrix();
    for (int c = 0; c < gm.cols(); ++c) out << detail::int_row(gm.column(c)) << "\n";

    // Relation table for Z/3 via the pair p(a,b) = a + 3b, q(a,b) = a on Z^2.
    auto free2 = std::make_shared<WittContext>(g, s, GeneratorSet{2, {"alpha", "beta"}}, term_bound);
    IntMatrix p(1, 2), q(1, 2);
    p.at(0, 0) = 1;
    p.at(0, 1) = 3;
    q.at(0, 0) = 1;

    out << "relation table (W, u, v, p, q):\n";
    std::vector<std::vector<Int>> rel_cols;
    const int n2 = coords_size(*free2);
    int off = 0;
    for (int li = 0; li < free2->level_count(); ++li) {
        const auto& lv = free2->level(li);
        // One table row per (u, v); every orbit with those letter counts must
        // produce the same p/q vectors.
        std::map<std::pair<int, int>, std::pair<std::vector<Int>, std::vector<Int>>> rows;
        for (size_t o = 0; o < lv.orbits.reps.size(); ++o) {
            OrbitCoords unit;
            unit.x.assign(n2, Int(0));
            unit.x[off + static_cast<int>(o)] = 1;
            GhostVector w = ghost_linear(*free2, unit);
            std::vector<Int> pr = flatten_ghost(*free1, ghost_pushforward(*free2, *free1, p, w));
            std::vector<Int> qr = flatten_ghost(*free1, ghost_pushforward(*free2, *free1, q, w));
            int v_count = 0;
            for (uint8_t letter : lv.orbits.reps[o]) v_count += letter;
            int u_count = static_cast<int>(lv.orbits.reps[o].size()) - v_count;
            auto key = std::make_pair(-u_count, v_count);
            auto it = rows.find(key);
            if (it == rows.end())
                rows.emplace(key, std::make_pair(pr, qr));
            else if (!(it->second.first == pr && it->second.second == qr))
                throw verification_error("d6-appendix: p/q rows differ within one (u, v) class");
            GhostVector diff = ghost_pushforward(*free2, *free1, p, w);
            diff -= ghost_pushforward(*free2, *free1, q, w);
            if (!diff.is_zero()) rel_cols.push_back(ghost_preimage(*free1, diff).x);
        }
        for (const auto& [key, pq] : rows)
            out << "|" << g.sub(lv.v).order() << "| " << -key.first << " " << key.second << " "
                << detail::int_row(pq.first) << " " << detail::int_row(pq.second) << "\n";
        off += static_cast<int>(lv.orbits.reps.size());
    }

    IntMatrix rel(wz.rank, static_cast<int>(rel_cols.size()));
    for (int c = 0; c < static_cast<int>(rel_cols.size()); ++c) rel.set_column(c, rel_cols[c]);
    auto sm = snf(rel);
    out << "invariant factors: ";
    for (size_t i = 0; i < sm.cokernel_factors.size(); ++i) {
        if (i) out << ", ";
        out << sm.cokernel_factors[i].get_str();
    }
    out << "\n";
    Int order = 1;
    for (const Int& d : sm.cokernel_factors) order *= d;
    out << "order: " << order.get_str() << "\n";

    // Independent cardinality route: the underlying set is the product of the
    // component sets, |W| = prod_V |M^{(x) G/V}|.
    Int count = 1;
    AbPresentation z3 = AbPresentation::cyclic(3);
    for (const auto& lv : free1->levels()) {
        Int comp = 1;
        for (const Int& d : presentation_factors(power_presentation(z3, lv.gv->count())))
            comp *= d;
        count *= comp;
    }
    out << "component-count check: " << count.get_str() << "\n";
    return out.str();
}

struct ReproduceResult {
    bool ok = true;
    std::string report;
    std::string detail; ///< first differing line on failure
};

/// Run the golden computation on the pinned table and on the permutation
/// realization; both must match the embedded data exactly.
inline ReproduceResult reproduce_d6_appendix(long term_bound = kDefaultTermBound) {
    ReproduceResult res;
    GroupCtx pinned(pinned_d6());
    GroupCtx permuted(load_group("d6"));
    std::string a = d6_appendix_report(pinned, term_bound);
    std::string b = d6_appendix_report(permuted, term_bound);
    res.report = a;
    std::string golden = d6_appendix_golden();
    auto first_diff = [](const std::string& x, const std::string& y) {
        std::istringstream xi(x), yi(y);
        std::string lx, ly;
        int line = 1;
        while (true) {
            bool gx = static_cast<bool>(std::getline(xi, lx));
            bool gy = static_cast<bool>(std::getline(yi, ly));
            if (!gx && !gy) return std::string();
            if (lx != ly || gx != gy)
                return "line " + std::to_string(line) + ": got '" + (gx ? lx : "<eof>") +
                       "', want '" + (gy ? ly : "<eof>") + "'";
            ++line;
        }
    };
    std::string d = first_diff(a, golden);
    if (!d.empty()) {
        res.ok = false;
        res.detail = "pinned run differs from golden data: " + d;
        return res;
    }
    d = first_diff(b, golden);
    if (!d.empty()) {
        res.ok = false;
        res.detail = "permutation run differs from golden data: " + d;
    }
    return res;
}

} // namespace gwitt
