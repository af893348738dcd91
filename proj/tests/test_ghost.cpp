#include <doctest.h>

#include <memory>
#include <random>

#include "gwitt/ghost.hpp"
#include "gwitt/io.hpp"
#include "gwitt/reproduce.hpp"

using namespace gwitt;

namespace {
const GroupCtx& d6() {
    static GroupCtx ctx(pinned_d6());
    return ctx;
}
const GroupCtx& c2() {
    static GroupCtx ctx(FiniteGroup::from_cayley({{0, 1}, {1, 0}}));
    return ctx;
}
const GroupCtx& c4() {
    static GroupCtx ctx(load_group("c4"));
    return ctx;
}

WittContextPtr make_ctx(const GroupCtx& g, int rank,
                        std::map<int, std::vector<int>> overrides = {},
                        std::vector<int> canon_override = {}) {
    return std::make_shared<WittContext>(g, full_truncation(g, g.full_id()),
                                         GeneratorSet{rank, {}}, kDefaultTermBound, true,
                                         std::move(overrides), std::move(canon_override));
}

ComponentFamily random_family(std::mt19937_64& rng, const WittContext& ctx, int max_terms) {
    ComponentFamily n;
    for (const auto& lv : ctx.levels()) {
        TensorElement t = zero_tensor(*lv.gv, ctx.rank());
        int terms = static_cast<int>(rng() % (max_terms + 1));
        for (int i = 0; i < terms; ++i) {
            Word w(lv.gv->count());
            for (auto& c : w) c = static_cast<uint8_t>(rng() % ctx.rank());
            t.add_term(w, static_cast<long>(rng() % 5) - 2);
        }
        n.comp[lv.v] = std::move(t);
    }
    return n;
}

OrbitCoords random_coords(std::mt19937_64& rng, const WittContext& ctx) {
    OrbitCoords x;
    x.x.resize(coords_size(ctx));
    for (auto& c : x.x) c = static_cast<long>(rng() % 7) - 3;
    return x;
}

// Independent oracle for one ghost component at any U in S, written directly
// from the double-sum formula (no use of ghost_map internals).
TensorElement ghost_component_oracle(const WittContext& ctx, const ComponentFamily& n, int u) {
    const GroupCtx& g = ctx.G();
    const CosetTable& gu = g.cosets(g.full_id(), u);
    TensorElement acc = zero_tensor(gu, ctx.rank());
    for (const auto& lv : ctx.levels()) {
        auto it = n.comp.find(lv.v);
        if (it == n.comp.end()) continue;
        for (int h : g.fixed_cosets(ctx.S().ambient, lv.v, u)) {
            int uh = g.conj_sub(g.group().inv(h), u);
            TensorElement part = tensor_power_reindexed(
                g, it->second, g.cosets(g.full_id(), uh), g.cosets(lv.v, uh));
            acc += act(g, h, part, gu);
        }
    }
    return acc;
}

// Scalar view of a rank-1 component.
Int scalar_of(const TensorElement& t) {
    if (t.is_zero()) return 0;
    REQUIRE(t.terms.size() == 1);
    return t.terms.begin()->second;
}
} // namespace

TEST_CASE("ghost_map: zero and table-of-marks shape for rank 1") {
    auto ctx = make_ctx(d6(), 1);
    CHECK(ghost_map(*ctx, ComponentFamily{}).is_zero());

    // rank 1: w_U(n) = sum_V |(H/V)^U| n_V^{|V:U|}
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        ComponentFamily n = random_family(rng, *ctx, 1);
        GhostVector w = ghost_map(*ctx, n);
        for (const auto& ulv : ctx->levels()) {
            Int expect = 0;
            for (const auto& vlv : ctx->levels()) {
                auto it = n.comp.find(vlv.v);
                if (it == n.comp.end() || it->second.is_zero()) continue;
                long marks = static_cast<long>(
                    d6().fixed_cosets(d6().full_id(), vlv.v, ulv.v).size());
                if (marks == 0) continue;
                Int nv = scalar_of(it->second);
                Int powed;
                unsigned long e =
                    static_cast<unsigned long>(d6().sub(vlv.v).order() / d6().sub(ulv.v).order());
                mpz_pow_ui(powed.get_mpz_t(), nv.get_mpz_t(), e);
                expect += marks * powed;
            }
            CHECK(scalar_of(w.comp.at(ulv.v)) == expect);
        }
    }
}

TEST_CASE("ghost_map agrees with the direct double-sum oracle at every U in S") {
    auto ctx = make_ctx(d6(), 2);
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 5; ++trial) {
        ComponentFamily n = random_family(rng, *ctx, 2);
        GhostVector w = ghost_map(*ctx, n);
        for (int u : ctx->S().members) {
            TensorElement direct = ghost_component_oracle(*ctx, n, u);
            TensorElement reconstructed = component_at(*ctx, w, u);
            CHECK(detail::reindex_space(reconstructed, *direct.space) == direct);
        }
    }
}

TEST_CASE("classical ghost components for cyclic p-groups, rank 1") {
    // C4 = C_{2^2}: subgroups C4 > C2 > {e}; component at C_{2^{n-j}} is w_j.
    auto ctx = make_ctx(c4(), 1);
    REQUIRE(ctx->level_count() == 3);
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Int> a{static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 9) - 4,
                           static_cast<long>(rng() % 9) - 4};
        ComponentFamily n;
        for (int li = 0; li < 3; ++li) {
            const auto& lv = ctx->level(li);
            Word w(lv.gv->count(), 0);
            n.comp[lv.v] = monomial(*lv.gv, 1, w, a[li]);
        }
        GhostVector w = ghost_map(*ctx, n);
        std::vector<Int> classical = classical_ghost_reference(2, 3, a);
        for (int j = 0; j < 3; ++j) CHECK(scalar_of(w.comp.at(ctx->level(j).v)) == classical[j]);
    }
}

TEST_CASE("classical_ghost_reference fixed values") {
    CHECK(classical_ghost_reference(2, 2, {1, 1}) == std::vector<Int>{1, 3});
    CHECK(classical_ghost_reference(3, 2, {0, 0}) == std::vector<Int>{0, 0});
    CHECK(classical_ghost_reference(3, 2, {1, 0}) == std::vector<Int>{1, 1});
}

TEST_CASE("ghost_linear: marks columns, additivity, injectivity") {
    auto ctx = make_ctx(d6(), 1);
    const int n = coords_size(*ctx);
    REQUIRE(n == 4);

    // unit orbit at V -> column of the table of marks
    IntMatrix marks = table_of_marks(d6());
    for (int c = 0; c < 4; ++c) {
        OrbitCoords unit;
        unit.x.assign(n, Int(0));
        unit.x[c] = 1;
        GhostVector w = ghost_linear(*ctx, unit);
        for (int r = 0; r < 4; ++r) CHECK(scalar_of(w.comp.at(ctx->level(r).v)) == marks.at(r, c));
    }

    auto ctx2 = make_ctx(d6(), 2);
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        OrbitCoords x = random_coords(rng, *ctx2);
        OrbitCoords y = random_coords(rng, *ctx2);
        OrbitCoords sum;
        sum.x.resize(x.x.size());
        for (size_t i = 0; i < x.x.size(); ++i) sum.x[i] = x.x[i] + y.x[i];
        CHECK(ghost_linear(*ctx2, sum) == ghost_linear(*ctx2, x) + ghost_linear(*ctx2, y));
        // injectivity through the round trip
        CHECK(ghost_preimage(*ctx2, ghost_linear(*ctx2, x)).x == x.x);
        if (!(x.x == std::vector<Int>(x.x.size(), Int(0))))
            CHECK(!ghost_linear(*ctx2, x).is_zero());
    }
}

TEST_CASE("dwork_sum special cases") {
    auto ctx = make_ctx(c2(), 1);
    std::mt19937_64 rng(41);
    OrbitCoords x = random_coords(rng, *ctx);
    GhostVector a = ghost_linear(*ctx, x);
    // U = H: the single term phi^H_H(a_H) = a_H
    CHECK(dwork_sum(*ctx, a, c2().full_id()) == a.comp.at(c2().full_id()));
    // C2 rank 1 at U = {e}: a_e + a_{C2} pulled back
    Int expect = scalar_of(a.comp.at(c2().trivial_id())) + scalar_of(a.comp.at(c2().full_id()));
    CHECK(scalar_of(dwork_sum(*ctx, a, c2().trivial_id())) == expect);

    // |N_H(U):U| = 1 -> dwork_sum = a_U (U = <s> inside D6)
    auto dctx = make_ctx(d6(), 2);
    OrbitCoords dx = random_coords(rng, *dctx);
    GhostVector da = ghost_linear(*dctx, dx);
    int s = d6().sub_id_of({0, 3});
    CHECK(dwork_sum(*dctx, da, s) == da.comp.at(s));
}

TEST_CASE("dwork_check characterizes the ghost image") {
    // C2 rank 1: pass iff a_e + a_{C2} even
    auto ctx = make_ctx(c2(), 1);
    auto make_ghost = [&](long a_c2, long a_e) {
        GhostVector a;
        const auto& top = ctx->level(0);
        const auto& bot = ctx->level(1);
        a.comp.emplace(top.v, monomial(*top.gv, 1, Word{0}, a_c2));
        a.comp.emplace(bot.v, monomial(*bot.gv, 1, Word{0, 0}, a_e));
        return a;
    };
    CHECK(dwork_check(*ctx, make_ghost(1, 1)).ok);
    DworkReport r = dwork_check(*ctx, make_ghost(1, 0));
    CHECK(!r.ok);
    CHECK(r.failed_u == c2().trivial_id());

    // C3: equivalent to the classical congruence a_1 = a_0^3 mod 3
    GroupCtx c3(load_group("c3"));
    auto ctx3 = make_ctx(c3, 1);
    for (long a0 = -3; a0 <= 3; ++a0)
        for (long a1 = -3; a1 <= 3; ++a1) {
            GhostVector a;
            a.comp.emplace(ctx3->level(0).v, monomial(*ctx3->level(0).gv, 1, Word{0}, a0));
            a.comp.emplace(ctx3->level(1).v, monomial(*ctx3->level(1).gv, 1, Word{0, 0, 0}, a1));
            bool classical = ((a1 - a0 * a0 * a0) % 3) == 0;
            CHECK(dwork_check(*ctx3, a).ok == classical);
        }

    // images of the additive embedding pass as well (im w = im w^f)
    std::mt19937_64 rng0(42);
    auto dctx = make_ctx(d6(), 2);
    for (int trial = 0; trial < 5; ++trial)
        CHECK(dwork_check(*dctx, ghost_linear(*dctx, random_coords(rng0, *dctx))).ok);

    // ghost images always pass (congruence lemma with K = H)
    std::mt19937_64 rng(43);
    for (const GroupCtx* g : {&d6(), &c4()}) {
        auto gctx = make_ctx(*g, 2);
        for (int trial = 0; trial < 5; ++trial) {
            ComponentFamily n = random_family(rng, *gctx, 2);
            CHECK(dwork_check(*gctx, ghost_map(*gctx, n)).ok);
        }
    }
}

TEST_CASE("ghost_preimage: round trips and the D6 basis example") {
    auto ctx = make_ctx(d6(), 1);
    // a = (1,1,1,1) -> unit at the D6 component
    GhostVector a;
    for (const auto& lv : ctx->levels())
        a.comp.emplace(lv.v, monomial(*lv.gv, 1, Word(lv.gv->count(), 0), 1));
    OrbitCoords x = ghost_preimage(*ctx, a);
    CHECK(x.x == std::vector<Int>{1, 0, 0, 0});

    // ghost_map images have w^f-preimages with the same ghost vector
    // (image equality im(w) = im(w^f))
    auto ctx2 = make_ctx(d6(), 2);
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 5; ++trial) {
        ComponentFamily n = random_family(rng, *ctx2, 2);
        GhostVector w = ghost_map(*ctx2, n);
        OrbitCoords coords = ghost_preimage(*ctx2, w);
        CHECK(ghost_linear(*ctx2, coords) == w);
    }

    // non-images throw
    GhostVector bad;
    for (const auto& lv : ctx->levels())
        bad.comp.emplace(lv.v, monomial(*lv.gv, 1, Word(lv.gv->count(), 0),
                                        lv.v == d6().trivial_id() ? 1 : 0));
    CHECK_THROWS_AS(ghost_preimage(*ctx, bad), verification_error);
}

TEST_CASE("preimage succeeds exactly when the congruences pass") {
    auto ctx = make_ctx(d6(), 2);
    std::mt19937_64 rng(53);
    int agree = 0, reject = 0;
    for (int trial = 0; trial < 40; ++trial) {
        // random orbit-sum perturbations of a ghost image
        GhostVector a = ghost_linear(*ctx, random_coords(rng, *ctx));
        int li = static_cast<int>(rng() % ctx->level_count());
        const auto& lv = ctx->level(li);
        int o = static_cast<int>(rng() % lv.orbits.reps.size());
        TensorElement bump = zero_tensor(*lv.gv, 2);
        for (const auto& [w, oi] : lv.orbits.orbit_of)
            if (oi == o) bump.add_term(w, 1);
        a.comp.at(lv.v) += bump;

        bool pass = dwork_check(*ctx, a).ok;
        bool solvable = true;
        try {
            OrbitCoords x = ghost_preimage(*ctx, a);
            CHECK(ghost_linear(*ctx, x) == a);
        } catch (const verification_error&) {
            solvable = false;
        }
        CHECK(pass == solvable);
        (pass ? agree : reject) += 1;
    }
    CHECK(reject > 0); // the perturbations really do produce non-images
}

TEST_CASE("image is independent of canonical and coset representative choices") {
    // override: canonical order-2 subgroup <sr> instead of <s>, and a
    // non-minimal coset representative choice for D6/<r>
    int sr = d6().sub_id_of({0, 4});
    int r = d6().sub_id_of({0, 1, 2});
    std::vector<int> canon{d6().full_id(), r, sr, d6().trivial_id()};
    std::map<int, std::vector<int>> reps{{r, {0, 4}}};
    auto base = make_ctx(d6(), 2);
    auto alt = make_ctx(d6(), 2, reps, canon);

    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 6; ++trial) {
        // an image point of the base context, re-expressed for the alternate
        GhostVector a = ghost_linear(*base, random_coords(rng, *base));
        GhostVector a_alt;
        for (const auto& lv : alt->levels())
            a_alt.comp.emplace(lv.v, detail::reindex_space(component_at(*base, a, lv.v), *lv.gv));
        // same underlying family
        CHECK(flatten_full_family(*base, a) == flatten_full_family(*alt, a_alt));
        // and it is in the image of the alternate context's embedding
        OrbitCoords x = ghost_preimage(*alt, a_alt);
        CHECK(ghost_linear(*alt, x) == a_alt);

        // converse direction
        GhostVector b_alt = ghost_linear(*alt, random_coords(rng, *alt));
        GhostVector b;
        for (const auto& lv : base->levels())
            b.comp.emplace(lv.v, detail::reindex_space(component_at(*alt, b_alt, lv.v), *lv.gv));
        OrbitCoords y = ghost_preimage(*base, b);
        CHECK(ghost_linear(*base, y) == b);
    }
}

TEST_CASE("equivariance of ghost components") {
    auto ctx = make_ctx(d6(), 2);
    std::mt19937_64 rng(61);
    ComponentFamily n = random_family(rng, *ctx, 2);
    GhostVector w = ghost_map(*ctx, n);
    for (const auto& lv : ctx->levels())
        for (int g = 0; g < 6; ++g) {
            int ug = d6().conj_sub(g, lv.v);
            const CosetTable& gug = d6().cosets(d6().full_id(), ug);
            TensorElement lhs = detail::reindex_space(component_at(*ctx, w, ug), gug);
            TensorElement rhs = act(d6(), g, w.comp.at(lv.v), gug);
            CHECK(lhs == rhs);
        }
}
