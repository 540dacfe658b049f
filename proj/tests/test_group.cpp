#include "doctest.h"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "ordlat/context.hpp"
#include "ordlat/element.hpp"
#include "ordlat/errors.hpp"
#include "ordlat/group.hpp"
#include "ordlat/lattice.hpp"
#include "ordlat/linalg.hpp"
#include "ordlat/order.hpp"

using namespace ordlat;

namespace {

GroupData group_from(const std::string& gens, std::size_t cap = 64) {
    return make_group(parse_generators(gens), cap);
}

// Dense coordinates of b_a * b_b in the order's basis.
std::vector<RingElement> product_coords(const OrderPtr& lam, std::size_t a, std::size_t b) {
    std::vector<RingElement> v(lam->dim(), RingElement::zero(lam->ctx()));
    for (const SparseTerm& t : lam->product(a, b)) v[t.index] += t.coeff;
    return v;
}

// Linear system whose left kernel is the space of derivations: the unknown
// matrix D (row u = coordinates of the image of b_u) must satisfy, for every
// pair (i, j) and output coordinate s, the Leibniz relation
//   sum_u (b_i b_j)_u D[u][s] = sum_v D[i][v] (b_v b_j)_s
//                             + sum_v D[j][v] (b_i b_v)_s.
// Unknowns are flattened as u * dim + v, equations as (i * dim + j) * dim + s.
Mat derivation_system(const OrderPtr& lam) {
    const CtxPtr& ctx = lam->ctx();
    std::size_t D = lam->dim();
    std::vector<std::vector<std::vector<RingElement>>> P(D);
    for (std::size_t a = 0; a < D; ++a) {
        P[a].resize(D);
        for (std::size_t b = 0; b < D; ++b) P[a][b] = product_coords(lam, a, b);
    }
    Mat A(ctx, D * D, D * D * D);
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j)
            for (std::size_t s = 0; s < D; ++s) {
                std::size_t e = (i * D + j) * D + s;
                for (std::size_t u = 0; u < D; ++u) A.at(u * D + s, e) += P[i][j][u];
                for (std::size_t v = 0; v < D; ++v) {
                    A.at(i * D + v, e) -= P[v][j][s];
                    A.at(j * D + v, e) -= P[i][v][s];
                }
            }
    return A;
}

// Flattened inner derivations ad(b_t) : x -> b_t x - x b_t, one row per
// basis element.
Mat inner_derivations(const OrderPtr& lam) {
    const CtxPtr& ctx = lam->ctx();
    std::size_t D = lam->dim();
    Mat inn(ctx, D, D * D);
    for (std::size_t t = 0; t < D; ++t)
        for (std::size_t u = 0; u < D; ++u) {
            std::vector<RingElement> tu = product_coords(lam, t, u);
            std::vector<RingElement> ut = product_coords(lam, u, t);
            for (std::size_t v = 0; v < D; ++v) inn.at(t, u * D + v) = tu[v] - ut[v];
        }
    return inn;
}

// Independent detector for vanishing of the outer-derivation space: the
// saturated derivation space and the inner span must have the same free rank
// and every saturated derivation must already lie in the inner span.
bool derivation_oracle(const OrderPtr& lam) {
    Mat der = saturated_kernel(derivation_system(lam));
    Mat inn = inner_derivations(lam);
    Mat inn_free = free_row_basis(inn);
    return der.rows() == inn_free.rows() && row_span_contains(inn, der);
}

} // namespace

TEST_CASE("cycle notation parsing") {
    CHECK(parse_cycles("") == Perm{0});
    CHECK(parse_cycles("()") == Perm{0});
    CHECK(parse_cycles("e") == Perm{0});
    CHECK(parse_cycles("(1 2)") == Perm{1, 0});
    CHECK(parse_cycles("(1,2)") == Perm{1, 0});
    CHECK(parse_cycles("(1 2 3)") == Perm{1, 2, 0});
    CHECK(parse_cycles("(1 2)(3 4)") == Perm{1, 0, 3, 2});
    // Non-disjoint cycles compose left to right: 1 -> 2 -> 3.
    CHECK(parse_cycles("(1 2)(2 3)") == Perm{2, 0, 1});
    CHECK(parse_cycles("(2 3)(1 2)") == Perm{1, 2, 0});
    CHECK(parse_cycles("(1 2)", 4) == Perm{1, 0, 2, 3});

    CHECK_THROWS_AS(parse_cycles("(1 2"), ValidationError);
    CHECK_THROWS_AS(parse_cycles("1 2)"), ValidationError);
    CHECK_THROWS_AS(parse_cycles("(0 1)"), ValidationError);
    CHECK_THROWS_AS(parse_cycles("(1 2 2)"), ValidationError);
    CHECK_THROWS_AS(parse_cycles("(a)"), ValidationError);
    CHECK_THROWS_AS(parse_cycles("e (1 2)"), ValidationError);

    std::vector<Perm> gens = parse_generators("(1 2),(1 2 3)");
    REQUIRE(gens.size() == 2);
    CHECK(gens[0] == Perm{1, 0, 2});
    CHECK(gens[1] == Perm{1, 2, 0});
    CHECK(parse_generators("").empty());
    CHECK(parse_generators(" , ").empty());
    CHECK_THROWS_AS(parse_generators("((1 2)"), ValidationError);

    CHECK(cycle_string(Perm{0, 1, 2}) == "()");
    CHECK(cycle_string(Perm{1, 0, 2}) == "(1 2)");
    CHECK(cycle_string(Perm{1, 0, 3, 2}) == "(1 2)(3 4)");
    CHECK(cycle_string(parse_cycles("(1 2 3)")) == "(1 2 3)");
}

TEST_CASE("group enumeration and multiplication tables") {
    GroupData c2 = group_from("(1 2)");
    CHECK(c2.order() == 2);
    GroupData c4 = group_from("(1 2 3 4)");
    CHECK(c4.order() == 4);
    GroupData klein = group_from("(1 2),(3 4)");
    CHECK(klein.order() == 4);
    GroupData s3 = group_from("(1 2),(1 2 3)");
    CHECK(s3.order() == 6);
    GroupData d4 = group_from("(1 2 3 4),(1 3)");
    CHECK(d4.order() == 8);

    CHECK(s3.elements[0] == Perm{0, 1, 2});
    for (std::size_t i = 0; i < s3.order(); ++i) {
        CHECK(s3.mul(0, i) == i);
        CHECK(s3.mul(i, 0) == i);
        CHECK(s3.mul(i, s3.inverse(i)) == 0);
        for (std::size_t j = 0; j < s3.order(); ++j)
            for (std::size_t k = 0; k < s3.order(); ++k)
                CHECK(s3.mul(s3.mul(i, j), k) == s3.mul(i, s3.mul(j, k)));
    }
    CHECK(s3.index_of(parse_cycles("(1 3)")) < s3.order());
    CHECK(s3.index_of(parse_cycles("(1 4)")) == s3.order());

    CHECK_THROWS_AS(make_group(parse_generators("(1 2),(1 2 3)"), 5), GroupTooLarge);
    // order 65 = 5 * 13 exceeds the default cap
    CHECK_THROWS_AS(group_from("(1 2 3 4 5),(6 7 8 9 10 11 12 13 14 15 16 17 18)"),
                    GroupTooLarge);

    GroupData trivial = make_group({});
    CHECK(trivial.order() == 1);
    CHECK(trivial.degree == 1);
}

TEST_CASE("subgroups and double cosets") {
    GroupData s3 = group_from("(1 2),(1 2 3)");
    std::vector<std::size_t> h = subgroup_elements(s3, parse_generators("(1 2)"));
    REQUIRE(h.size() == 2);
    CHECK(h[0] == 0);
    CHECK(is_subgroup(s3, h));
    CHECK_FALSE(is_subgroup(s3, {0, 2})); // (1 2 3) alone is not closed
    CHECK_THROWS_AS(subgroup_elements(s3, parse_generators("(1 4)")), NotSubgroup);
    GroupData c3 = group_from("(1 2 3)");
    CHECK_THROWS_AS(subgroup_elements(c3, parse_generators("(1 2)")), NotSubgroup);

    CHECK(all_subgroups(group_from("(1 2)")).size() == 2);
    CHECK(all_subgroups(group_from("(1 2 3 4)")).size() == 3);
    CHECK(all_subgroups(group_from("(1 2),(3 4)")).size() == 5);
    CHECK(all_subgroups(s3).size() == 6);
    CHECK(all_subgroups(group_from("(1 2 3 4),(1 3)")).size() == 10);
    GroupData c17 = group_from("(1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17)");
    CHECK_THROWS_AS(all_subgroups(c17), CapExceeded);

    DoubleCosetPartition dc = double_cosets(s3, h);
    REQUIRE(dc.count() == 2);
    CHECK(dc.cosets[0].size() == 2);
    CHECK(dc.cosets[1].size() == 4);
    CHECK_THROWS_AS(double_cosets(s3, std::vector<std::size_t>{0, 2}), NotSubgroup);

    for (const std::string& gens :
         {std::string("(1 2),(1 2 3)"), std::string("(1 2 3 4),(1 3)"), std::string("(1 2),(3 4)")}) {
        GroupData G = group_from(gens);
        for (const auto& H : all_subgroups(G)) {
            DoubleCosetPartition part = double_cosets(G, H);
            std::set<std::size_t> covered;
            std::size_t total = 0;
            for (const auto& coset : part.cosets) {
                total += coset.size();
                covered.insert(coset.begin(), coset.end());
                CHECK(coset.size() % H.size() == 0);
                CHECK(H.size() * H.size() % coset.size() == 0);
            }
            CHECK(total == G.order());
            CHECK(covered.size() == G.order());
            // the double coset of the identity is H itself
            CHECK(part.cosets[0] == H);
        }
        DoubleCosetPartition whole = double_cosets(G, all_subgroups(G).back());
        CHECK(whole.count() == 1);
        std::vector<std::size_t> trivial{0};
        CHECK(double_cosets(G, trivial).count() == G.order());
    }
}

TEST_CASE("group algebras as orders") {
    CtxPtr ctx2 = Context::make(2, 1, 8);
    GroupData s3 = group_from("(1 2),(1 2 3)");
    OrderPtr ord = group_order(s3, Context::make(3, 1, 8));
    CHECK(ord->dim() == 6);
    CHECK(ord->labels()[0] == "()");

    // the multiplication table really is associative: rebuild with the
    // checked constructor
    {
        RingElement one = RingElement::one(ord->ctx());
        std::vector<std::vector<std::vector<SparseTerm>>> products(
            6, std::vector<std::vector<SparseTerm>>(6));
        std::vector<RingElement> id(6, RingElement::zero(ord->ctx()));
        id[0] = one;
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j)
                products[i][j] = {SparseTerm{s3.mul(i, j), one}};
        CHECK_NOTHROW(Order::make(ord->ctx(), 6, products, id));
    }

    // Gram determinant of the regular trace form: valuation |G| * v_p(|G|)
    CHECK(group_order(group_from("(1 2)"), ctx2)->trace_form_det_valuation() == 2);
    CHECK(group_order(group_from("(1 2 3 4)"), Context::make(2, 1, 12))
              ->trace_form_det_valuation() == 8);
    CHECK(group_order(group_from("(1 2),(3 4)"), Context::make(2, 1, 12))
              ->trace_form_det_valuation() == 8);
    CHECK(group_order(s3, Context::make(3, 1, 8))->trace_form_det_valuation() == 6);
    CHECK(group_order(group_from("(1 2 3 4),(1 3)"), Context::make(2, 1, 25))
              ->trace_form_det_valuation() == 24);
    // away from p the form is nondegenerate mod p
    CHECK(group_order(s3, Context::make(5, 1, 8))->trace_form_det_valuation() == 0);
}

TEST_CASE("permutation lattices on cosets") {
    CtxPtr ctx3 = Context::make(3, 1, 8);
    GroupData s3 = group_from("(1 2),(1 2 3)");
    std::vector<std::size_t> h = subgroup_elements(s3, parse_generators("(1 2)"));

    Lattice L = permutation_lattice(s3, h, ctx3);
    CHECK(L.rank() == 3);
    CHECK(end_rank(L) == 2);
    CHECK(is_rigid(L));

    // every action matrix is a permutation matrix
    for (std::size_t j = 0; j < s3.order(); ++j) {
        const Mat& A = L.action(j);
        for (std::size_t i = 0; i < 3; ++i) {
            std::size_t ones = 0;
            for (std::size_t k = 0; k < 3; ++k) {
                if (A.at(i, k) == RingElement::one(ctx3)) ++ones;
                else CHECK(A.at(i, k).is_zero());
            }
            CHECK(ones == 1);
        }
    }

    // the trivial subgroup recovers the regular module
    Lattice reg = permutation_lattice(s3, std::vector<std::size_t>{0}, ctx3);
    Lattice reg_direct = Lattice::regular(group_order(s3, ctx3));
    REQUIRE(reg.rank() == 6);
    for (std::size_t j = 0; j < 6; ++j) CHECK(reg.action(j) == reg_direct.action(j));

    CHECK_THROWS_AS(permutation_lattice(s3, std::vector<std::size_t>{0, 2}, ctx3), NotSubgroup);
}

TEST_CASE("endomorphism rank counts double cosets across the catalog") {
    struct Entry {
        std::string gens;
        std::int64_t p;
    };
    for (const Entry& entry : {Entry{"(1 2)", 2}, Entry{"(1 2 3)", 3}, Entry{"(1 2 3 4)", 2},
                               Entry{"(1 2),(3 4)", 2}, Entry{"(1 2),(1 2 3)", 3},
                               Entry{"(1 2 3 4),(1 3)", 2}}) {
        GroupData G = group_from(entry.gens);
        CtxPtr ctx = Context::make(entry.p, 1, 8);
        for (const auto& H : all_subgroups(G)) {
            Lattice L = permutation_lattice(G, H, ctx);
            CHECK(L.rank() == G.order() / H.size());
            DoubleCosetPartition dc = double_cosets(G, H);
            CHECK(end_rank(L) == dc.count());
            CHECK(is_rigid(L));
        }
    }
}

TEST_CASE("enveloping orders and the diagonal module") {
    CtxPtr ctx = Context::make(2, 1, 8);
    OrderPtr oc2 = group_order(group_from("(1 2)"), ctx);
    EnvelopingOrder env = enveloping_order(oc2);
    CHECK(env.env->dim() == 4);
    CHECK(env.diagonal.rank() == 2);

    // pair (i, j) acts by x -> b_i x b_j; for the two-element group the
    // mixed pairs act by the swap and the plain pairs act trivially
    Mat swap = Mat::from_ints(ctx, {{0, 1}, {1, 0}});
    CHECK(env.diagonal.action(0) == Mat::identity(ctx, 2));
    CHECK(env.diagonal.action(1) == swap);
    CHECK(env.diagonal.action(2) == swap);
    CHECK(env.diagonal.action(3) == Mat::identity(ctx, 2));

    // (g (x) 1) * (g (x) 1) = (g g) (x) 1 = 1 (x) 1
    REQUIRE(env.env->product(2, 2).size() == 1);
    CHECK(env.env->product(2, 2)[0].index == 0);

    // the checked constructor accepts the enveloping structure constants
    {
        std::vector<std::vector<std::vector<SparseTerm>>> products(
            4, std::vector<std::vector<SparseTerm>>(4));
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) products[i][j] = env.env->product(i, j);
        CHECK_NOTHROW(Order::make(ctx, 4, products, env.env->identity()));
    }

    // the first slot multiplies in the opposite order: with the indexing of
    // the six-element symmetric group, op((1 2)) then op((1 2 3)) expands
    // through the product (1 2 3)(1 2) = (2 3)
    GroupData s3 = group_from("(1 2),(1 2 3)");
    CtxPtr ctx3 = Context::make(3, 1, 6);
    OrderPtr os3 = group_order(s3, ctx3);
    EnvelopingOrder env3 = enveloping_order(os3);
    CHECK(env3.env->dim() == 36);
    std::size_t a = 1 * 6 + 0;
    std::size_t b = 2 * 6 + 0;
    REQUIRE(env3.env->product(a, b).size() == 1);
    CHECK(env3.env->product(a, b)[0].index == s3.mul(2, 1) * 6 + 0);
    CHECK(s3.mul(2, 1) != s3.mul(1, 2));

    CHECK_THROWS_AS(enveloping_order(oc2, 3), CapExceeded);
}

TEST_CASE("outer derivations vanish for group algebras at the defining prime") {
    struct Entry {
        std::string gens;
        std::int64_t p;
    };
    for (const Entry& entry : {Entry{"(1 2)", 2}, Entry{"(1 2 3)", 3}, Entry{"(1 2),(3 4)", 2},
                               Entry{"(1 2),(1 2 3)", 3}}) {
        CAPTURE(entry.gens);
        CAPTURE(entry.p);
        CtxPtr ctx = Context::make(entry.p, 1, 8);
        OrderPtr lam = group_order(group_from(entry.gens), ctx);
        CHECK(hochschild1_vanishes(lam));
        CHECK(derivation_oracle(lam));
    }

    // the noncommutative case has a nonzero inner span: for the six-element
    // symmetric group the inner derivations span a free module of rank
    // dim - (number of conjugacy classes) = 3
    CtxPtr ctx3 = Context::make(3, 1, 8);
    OrderPtr os3 = group_order(group_from("(1 2),(1 2 3)"), ctx3);
    Mat inn = inner_derivations(os3);
    CHECK(free_row_basis(inn).rows() == 3);
    Mat der = saturated_kernel(derivation_system(os3));
    CHECK(der.rows() == 3);
    CHECK(row_span_contains(inn, der));
}
