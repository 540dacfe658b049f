#include "doctest.h"

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "ordlat/context.hpp"
#include "ordlat/element.hpp"
#include "ordlat/errors.hpp"
#include "ordlat/genval.hpp"
#include "ordlat/witt.hpp"

#include "util.hpp"

using namespace ordlat;

namespace {

WittDigits digits_from_ints(const CtxPtr& ctx, const std::vector<std::int64_t>& ds) {
    CtxPtr res = ctx->residue();
    std::vector<RingElement> v;
    for (auto d : ds) v.push_back(RingElement::from_int(res, d));
    return make_digits(ctx, v);
}

WittPoint point_from_ints(const CtxPtr& ctx, int l,
                          const std::vector<std::vector<std::int64_t>>& coords) {
    std::vector<WittDigits> ds;
    for (const auto& c : coords) ds.push_back(digits_from_ints(ctx, c));
    return make_point(ctx, l, ds);
}

PolyO poly_from_ints(const CtxPtr& ctx, std::size_t vars,
                     const std::map<std::vector<int>, std::int64_t>& terms) {
    std::map<std::vector<int>, RingElement> t;
    for (const auto& [e, c] : terms) t.emplace(e, RingElement::from_int(ctx, c));
    return PolyO::make(ctx, vars, t);
}

// All lifts of the point at the working precision: elements whose first l
// digits match the coordinates.  Used by the independent minimum search.
std::vector<std::vector<RingElement>> all_lifts(const WittPoint& x) {
    std::vector<RingElement> ring = testutil::all_elements(x.ctx);
    std::vector<std::vector<RingElement>> per_coord(x.vars);
    for (std::size_t i = 0; i < x.vars; ++i)
        for (const RingElement& y : ring)
            if (to_witt_digits(y, x.l) == x.coords[i]) per_coord[i].push_back(y);
    std::vector<std::vector<RingElement>> lifts{{}};
    for (std::size_t i = 0; i < x.vars; ++i) {
        std::vector<std::vector<RingElement>> next;
        for (const auto& partial : lifts)
            for (const RingElement& y : per_coord[i]) {
                auto copy = partial;
                copy.push_back(y);
                next.push_back(copy);
            }
        lifts = std::move(next);
    }
    return lifts;
}

// Exhaustive minimum of the valuation over all lifts -- the definition of
// the generic valuation, computed without the shifted expansion.
CappedVal brute_generic_valuation(const PolyO& f, const WittPoint& x) {
    int best = f.ctx()->N();
    for (const auto& lift : all_lifts(x)) best = std::min(best, f.evaluate(lift).valuation());
    if (best == f.ctx()->N()) return {best, false};
    return {best, true};
}

PolyO random_poly(const CtxPtr& ctx, std::size_t vars, int maxdeg, std::mt19937_64& rng) {
    std::map<std::vector<int>, RingElement> terms;
    std::vector<std::vector<int>> monos;
    std::vector<int> exps(vars, 0);
    // All monomials of total degree <= maxdeg.
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i == vars) {
            monos.push_back(exps);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            exps[i] = e;
            self(self, i + 1, left - e);
        }
        exps[i] = 0;
    };
    rec(rec, 0, maxdeg);
    for (const auto& mono : monos)
        if (rng() % 2) terms.emplace(mono, testutil::random_element(ctx, rng));
    return PolyO::make(ctx, vars, terms);
}

WittPoint random_point(const CtxPtr& ctx, std::size_t vars, int l, std::mt19937_64& rng) {
    CtxPtr res = ctx->residue();
    std::vector<WittDigits> coords;
    for (std::size_t i = 0; i < vars; ++i) {
        std::vector<RingElement> ds;
        for (int j = 0; j < l; ++j) ds.push_back(testutil::random_element(res, rng));
        coords.push_back(make_digits(ctx, ds));
    }
    return make_point(ctx, l, coords);
}

} // namespace

TEST_CASE("polynomial arithmetic and validation") {
    CtxPtr ctx = Context::make(2, 1, 4);
    PolyO x0 = PolyO::variable(ctx, 2, 0);
    PolyO x1 = PolyO::variable(ctx, 2, 1);
    PolyO f = x0 * x0 + x1.times_p(1);
    CHECK(f.total_degree() == 2);
    CHECK(f.terms().size() == 2);
    CHECK((f - f).is_zero());
    CHECK(f.evaluate({RingElement::from_int(ctx, 3), RingElement::from_int(ctx, 1)}) ==
          RingElement::from_int(ctx, 11));
    CHECK((x0 * x1) * x0 == x0 * (x1 * x0));
    CHECK_THROWS_AS(PolyO::variable(ctx, 2, 2), ValidationError);
    CHECK_THROWS_AS(PolyO::make(ctx, 1, {{{-1}, RingElement::one(ctx)}}), ValidationError);
    CHECK_THROWS_AS(PolyO::make(ctx, 2, {{{1}, RingElement::one(ctx)}}), ValidationError);
    CHECK_THROWS_AS(f.evaluate({RingElement::one(ctx)}), ValidationError);
    // Zero coefficients are dropped, including ones formed by cancellation.
    CHECK(PolyO::make(ctx, 1, {{{1}, RingElement::zero(ctx)}}).is_zero());
    CHECK((x0 + x0.scaled(RingElement::from_int(ctx, 15))).is_zero());
}

TEST_CASE("witt point validation and canonical lift") {
    CtxPtr ctx = Context::make(2, 1, 4);
    CHECK_THROWS_AS(point_from_ints(ctx, 5, {{0, 0, 0, 0, 0}}), ValidationError);
    CHECK_THROWS_AS(point_from_ints(ctx, 2, {{1}}), ValidationError);
    WittPoint x = point_from_ints(ctx, 2, {{1, 1}, {0, 1}});
    std::vector<RingElement> lift = zero_tail_lift(x);
    REQUIRE(lift.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(to_witt_digits(lift[i], 2) == x.coords[i]);
        // zero tail: remaining digits vanish
        WittDigits full = to_witt_digits(lift[i], 4);
        for (int j = 2; j < 4; ++j) CHECK(full.digits[static_cast<std::size_t>(j)].is_zero());
    }
}

TEST_CASE("naive valuation") {
    CtxPtr ctx = Context::make(2, 1, 5);
    CHECK(naive_valuation(poly_from_ints(ctx, 1, {{{0}, 8}})) == CappedVal{3, true});
    CHECK(naive_valuation(poly_from_ints(ctx, 2, {{{1, 0}, 1}, {{0, 1}, 2}})) ==
          CappedVal{0, true});
    CHECK(naive_valuation(poly_from_ints(ctx, 2, {{{1, 1}, 2}, {{0, 0}, 4}})) ==
          CappedVal{1, true});
    CHECK(naive_valuation(PolyO::zero(ctx, 1)) == CappedVal{5, false});
}

TEST_CASE("generic valuation at pinned inputs") {
    CtxPtr ctx = Context::make(2, 1, 3);
    PolyO X = PolyO::variable(ctx, 1, 0);

    SUBCASE("single variable at the origin gains one from the shift") {
        CHECK(generic_valuation(X, point_from_ints(ctx, 1, {{0}})) == CappedVal{1, true});
        CHECK(generic_valuation(X, point_from_ints(ctx, 1, {{1}})) == CappedVal{0, true});
    }
    SUBCASE("expansion is exact polynomial arithmetic") {
        PolyO f = X * X + X.times_p(1);
        WittPoint origin = point_from_ints(ctx, 1, {{0}});
        // f(2Z) = 4Z^2 + 4Z
        PolyO expect = poly_from_ints(ctx, 1, {{{2}, 4}, {{1}, 4}});
        CHECK(shifted_expansion(f, origin) == expect);
        CHECK(generic_valuation(f, origin) == CappedVal{2, true});
    }
    SUBCASE("two variables with a unit digit") {
        PolyO f = PolyO::variable(ctx, 2, 0).times_p(1) + PolyO::variable(ctx, 2, 1);
        WittPoint x = point_from_ints(ctx, 1, {{1}, {0}});
        CHECK(generic_valuation(f, x) == CappedVal{1, true});
        CHECK(variety_membership(f, x, 1));
        CHECK(!variety_membership(f, x, 2));
    }
    SUBCASE("constant polynomials see only their own valuation") {
        PolyO c = poly_from_ints(ctx, 1, {{{0}, 4}});
        CHECK(generic_valuation(c, point_from_ints(ctx, 1, {{1}})) == CappedVal{2, true});
    }
    SUBCASE("vanishing expansion reports the certified bound") {
        PolyO f = X.times_p(2); // 4X becomes 8Z at the origin, zero at N=3
        WittPoint origin = point_from_ints(ctx, 1, {{0}});
        CHECK(generic_valuation(f, origin) == CappedVal{2, false});
        CHECK(variety_membership(f, origin, 2));
        CHECK_THROWS_AS(variety_membership(f, origin, 3), PrecisionExhausted);
    }
}

TEST_CASE("membership thresholds at pinned inputs") {
    CtxPtr ctx = Context::make(2, 1, 3);
    PolyO X = PolyO::variable(ctx, 1, 0);
    WittPoint origin = point_from_ints(ctx, 1, {{0}});
    CHECK(variety_membership(X, origin, 0));
    CHECK(variety_membership(X, origin, 1));
    CHECK(!variety_membership(X, origin, 2));
    CHECK_THROWS_AS(variety_membership(X, origin, -1), ValidationError);
}

namespace {

// Compare against the definition.  The base-ring minimum can sit strictly
// above the generic valuation when no base-field direction works (the
// reduced expansion can vanish on all rational points without being zero);
// in that case the witness must come from a proper extension and achieve
// the claimed value there.
void check_against_brute(const PolyO& f, const WittPoint& x) {
    CappedVal got = generic_valuation(f, x);
    CappedVal base = brute_generic_valuation(f, x);
    if (!got.exact) {
        // every lift evaluates to zero at this precision
        CHECK(!base.exact);
        return;
    }
    CHECK(base.value >= got.value);
    if (base.exact && base.value == got.value) return;
    Witness w = witness_lift(f, x);
    CHECK(w.extension_degree >= 2);
    CHECK(w.value == got);
    Embedding e = extend_context(f.ctx(), w.extension_degree);
    PolyO fe = transport(f, e);
    std::vector<RingElement> lift = zero_tail_lift(transport(x, e));
    std::vector<RingElement> at;
    for (std::size_t i = 0; i < lift.size(); ++i) at.push_back(lift[i] + w.z[i].times_p(x.l));
    CHECK(fe.evaluate(at).valuation() == got.value);
}

} // namespace

TEST_CASE("generic valuation equals the exhaustive minimum over lifts") {
    // Independent oracle: enumerate every lift and take the minimum
    // valuation, per the definition.
    CtxPtr ctx = Context::make(2, 1, 3);

    SUBCASE("one variable: complete equality over the quadratic extension") {
        // For univariate f of degree <= 2 the reduced direction polynomial
        // has at most two roots, so the four-element field always carries a
        // witness: there the exhaustive minimum must agree exactly.
        Embedding e = extend_context(ctx, 2);
        for (int l = 1; l <= 2; ++l)
            for (std::int64_t d0 = 0; d0 < 2; ++d0)
                for (std::int64_t d1 = 0; d1 < (l == 2 ? 2 : 1); ++d1) {
                    WittPoint x = l == 1 ? point_from_ints(ctx, 1, {{d0}})
                                         : point_from_ints(ctx, 2, {{d0, d1}});
                    WittPoint xe = transport(x, e);
                    for (std::int64_t c0 = 0; c0 < 8; ++c0)
                        for (std::int64_t c1 = 0; c1 < 8; ++c1)
                            for (std::int64_t c2 = 0; c2 < 8; ++c2) {
                                PolyO f = poly_from_ints(
                                    ctx, 1, {{{0}, c0}, {{1}, c1}, {{2}, c2}});
                                CappedVal got = generic_valuation(f, x);
                                CappedVal ext = brute_generic_valuation(transport(f, e), xe);
                                if (ext.exact) {
                                    CHECK(got == ext);
                                } else {
                                    CHECK(!got.exact);
                                }
                            }
                }
    }
    SUBCASE("two variables over a coefficient subset") {
        const std::vector<std::int64_t> coeffs{0, 1, 2, 4};
        WittPoint pts[] = {point_from_ints(ctx, 1, {{0}, {0}}),
                           point_from_ints(ctx, 1, {{1}, {0}}),
                           point_from_ints(ctx, 1, {{0}, {1}}),
                           point_from_ints(ctx, 1, {{1}, {1}})};
        for (std::int64_t c0 : coeffs)
            for (std::int64_t c1 : coeffs)
                for (std::int64_t c2 : coeffs)
                    for (std::int64_t c3 : coeffs) {
                        PolyO f = poly_from_ints(ctx, 2,
                                                 {{{0, 0}, c0},
                                                  {{1, 0}, c1},
                                                  {{0, 1}, c2},
                                                  {{1, 1}, c3}});
                        for (const WittPoint& x : pts) check_against_brute(f, x);
                    }
    }
}

TEST_CASE("lifts never beat the generic valuation") {
    std::mt19937_64 rng(20260823);
    CtxPtr ctx = Context::make(3, 1, 6);
    for (int trial = 0; trial < 20; ++trial) {
        PolyO f = random_poly(ctx, 2, 2, rng);
        WittPoint x = random_point(ctx, 2, 2, rng);
        CappedVal v = generic_valuation(f, x);
        std::vector<RingElement> base = zero_tail_lift(x);
        for (int k = 0; k < 5; ++k) {
            std::vector<RingElement> lift;
            for (const RingElement& b : base)
                lift.push_back(b + testutil::random_element(ctx, rng).times_p(x.l));
            int got = f.evaluate(lift).valuation();
            CHECK(got >= v.value);
        }
    }
}

TEST_CASE("generic valuation is multiplicative") {
    std::mt19937_64 rng(77);
    CtxPtr ctx = Context::make(2, 2, 8);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        PolyO f = random_poly(ctx, 2, 2, rng);
        PolyO g = random_poly(ctx, 2, 2, rng);
        if (f.is_zero() || g.is_zero()) continue;
        WittPoint x = random_point(ctx, 2, 1, rng);
        CappedVal vf = generic_valuation(f, x);
        CappedVal vg = generic_valuation(g, x);
        CappedVal vfg = generic_valuation(f * g, x);
        if (vf.exact && vg.exact && vfg.exact) {
            CHECK(vfg.value == vf.value + vg.value);
            ++checked;
        }
    }
    CHECK(checked > 30);
}

TEST_CASE("witness lifts") {
    SUBCASE("base field witness at a unit point") {
        CtxPtr ctx = Context::make(2, 1, 3);
        PolyO X = PolyO::variable(ctx, 1, 0);
        Witness w = witness_lift(X, point_from_ints(ctx, 1, {{1}}));
        CHECK(w.extension_degree == 1);
        CHECK(w.value == CappedVal{0, true});
        std::vector<RingElement> lift = zero_tail_lift(point_from_ints(ctx, 1, {{1}}));
        RingElement at = X.evaluate({lift[0] + w.z[0].times_p(1)});
        CHECK(at.valuation() == 0);
    }
    SUBCASE("the quadratic needing a degree-two extension") {
        // f = X^2 + 2X at the origin: the reduced direction polynomial is
        // Z^2 + Z, identically zero on the prime field but not on its
        // quadratic extension.
        CtxPtr ctx = Context::make(2, 1, 4);
        PolyO X = PolyO::variable(ctx, 1, 0);
        PolyO f = X * X + X.times_p(1);
        WittPoint origin = point_from_ints(ctx, 1, {{0}});
        Witness w = witness_lift(f, origin);
        CHECK(w.extension_degree == 2);
        CHECK(w.value == CappedVal{2, true});
        // verify optimality in the extension ring
        Embedding e = extend_context(ctx, 2);
        PolyO fe = transport(f, e);
        RingElement at = fe.evaluate({w.z[0].times_p(1)});
        CHECK(at.valuation() == 2);
        // Teichmuller entries reproduce from their residues
        CHECK(w.z[0] == teichmuller(w.field, w.z[0].residue()));
    }
    SUBCASE("constants are witnessed by zero") {
        CtxPtr ctx = Context::make(3, 1, 4);
        PolyO c = poly_from_ints(ctx, 2, {{{0, 0}, 3}});
        Witness w = witness_lift(c, point_from_ints(ctx, 1, {{2}, {1}}));
        CHECK(w.extension_degree == 1);
        CHECK(w.value == CappedVal{1, true});
        for (const RingElement& z : w.z) CHECK(z.is_zero());
    }
    SUBCASE("witness optimality on random instances") {
        std::mt19937_64 rng(505);
        CtxPtr ctx = Context::make(2, 1, 6);
        int checked = 0;
        for (int trial = 0; trial < 40; ++trial) {
            PolyO f = random_poly(ctx, 2, 2, rng);
            if (f.is_zero()) continue;
            WittPoint x = random_point(ctx, 2, 1, rng);
            CappedVal v = generic_valuation(f, x);
            if (!v.exact) continue;
            Witness w = witness_lift(f, x, trial);
            CHECK(w.value == v);
            Embedding e = extend_context(ctx, w.extension_degree);
            PolyO fe = w.extension_degree == 1 ? f : transport(f, e);
            std::vector<RingElement> lift =
                w.extension_degree == 1 ? zero_tail_lift(x)
                                        : zero_tail_lift(transport(x, e));
            std::vector<RingElement> at;
            for (std::size_t i = 0; i < lift.size(); ++i)
                at.push_back(lift[i] + w.z[i].times_p(x.l));
            CHECK(fe.evaluate(at).valuation() == v.value);
            ++checked;
        }
        CHECK(checked > 20);
    }
}

TEST_CASE("generic valuation is extension independent") {
    std::mt19937_64 rng(909);
    for (auto [p, m] : {std::pair<std::uint64_t, int>{2, 1}, {3, 1}, {2, 2}}) {
        CtxPtr ctx = Context::make(p, m, 5);
        Embedding e = extend_context(ctx, 2);
        for (int trial = 0; trial < 12; ++trial) {
            PolyO f = random_poly(ctx, 2, 2, rng);
            WittPoint x = random_point(ctx, 2, 2, rng);
            CHECK(generic_valuation(f, x) == generic_valuation(transport(f, e), transport(x, e)));
        }
    }
}
