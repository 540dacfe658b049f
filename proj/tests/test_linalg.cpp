#include "doctest.h"

#include <algorithm>
#include <random>

#include "ordlat/context.hpp"
#include "ordlat/element.hpp"
#include "ordlat/errors.hpp"
#include "ordlat/linalg.hpp"

#include "util.hpp"

using namespace ordlat;
using testutil::all_elements;
using testutil::random_element;
using testutil::random_unit;

namespace {

Mat random_matrix(const CtxPtr& ctx, std::size_t r, std::size_t c, std::mt19937_64& rng) {
    Mat out(ctx, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) out.at(i, j) = random_element(ctx, rng);
    return out;
}

// Apply a random invertible sequence of row operations in place.
void shuffle_rows(Mat& A, std::mt19937_64& rng) {
    if (A.rows() < 1) return;
    std::uniform_int_distribution<std::size_t> pick(0, A.rows() - 1);
    for (int step = 0; step < 24; ++step) {
        std::size_t i = pick(rng), k = pick(rng);
        switch (rng() % 3) {
        case 0:
            for (std::size_t j = 0; j < A.cols(); ++j) std::swap(A.at(i, j), A.at(k, j));
            break;
        case 1: {
            RingElement u = random_unit(A.ctx(), rng);
            for (std::size_t j = 0; j < A.cols(); ++j) A.at(i, j) *= u;
            break;
        }
        default: {
            if (i == k) break;
            RingElement c = random_element(A.ctx(), rng);
            for (std::size_t j = 0; j < A.cols(); ++j) A.at(i, j) += c * A.at(k, j);
            break;
        }
        }
    }
}

Mat random_invertible(const CtxPtr& ctx, std::size_t n, std::mt19937_64& rng) {
    Mat A = Mat::identity(ctx, n);
    shuffle_rows(A, rng);
    // The transvection branch cannot make the matrix singular and neither can
    // the other two, so this is invertible by construction.
    return A;
}

} // namespace

TEST_CASE("canonical row form on pinned inputs") {
    for (std::int64_t p : {2, 3}) {
        CtxPtr ctx = Context::make(p, 1, 3);
        SUBCASE("rank one from repeated rows") {
            Mat A = Mat::from_ints(ctx, {{1, 1}, {1, 1}});
            Mat H = howell_form(A).H;
            CHECK(H == Mat::from_ints(ctx, {{1, 1}, {0, 0}}));
        }
        SUBCASE("already canonical diagonal-style input") {
            Mat A = Mat::from_ints(ctx, {{p, 0}, {0, 1}});
            CHECK(howell_form(A).H == A);
        }
        SUBCASE("rows land at their pivot positions") {
            Mat A = Mat::from_ints(ctx, {{0, 1}, {1, 0}});
            CHECK(howell_form(A).H == Mat::identity(ctx, 2));
        }
        SUBCASE("closure adds the annihilating multiple as a new row") {
            // (0, p^2) = p^2 * (p, 1) lies in the span but no echelon of the
            // single input row exhibits it.
            Mat A = Mat::from_ints(ctx, {{p, 1}});
            Mat H = howell_form(A).H;
            CHECK(H == Mat::from_ints(ctx, {{p, 1}, {0, p * p}}));
        }
    }
    SUBCASE("entries above a pivot are canonical representatives") {
        CtxPtr ctx = Context::make(2, 1, 3);
        Mat A = Mat::from_ints(ctx, {{1, 7}, {0, 4}});
        CHECK(howell_form(A).H == Mat::from_ints(ctx, {{1, 3}, {0, 4}}));
    }
}

TEST_CASE("canonical row form properties on random inputs") {
    std::mt19937_64 rng(2024);
    for (std::int64_t p : {2, 3}) {
        for (int m : {1, 2}) {
            CtxPtr ctx = Context::make(p, m, 3);
            for (int trial = 0; trial < 40; ++trial) {
                std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
                Mat A = random_matrix(ctx, r, c, rng);
                HowellForm hf = howell_form(A);
                CHECK(hf.U * A == hf.H);
                CHECK(howell_form(hf.H).H == hf.H); // canonical forms are fixed points

                Mat B = A;
                shuffle_rows(B, rng);
                CHECK(howell_form(B).H == hf.H); // row operations leave the form alone
                CHECK(same_row_span(A, B));

                // Appending any span member must not change the form either.
                Mat x(ctx, 1, c);
                for (std::size_t i = 0; i < r; ++i) {
                    RingElement coef = random_element(ctx, rng);
                    for (std::size_t j = 0; j < c; ++j) x.at(0, j) += coef * A.at(i, j);
                }
                CHECK(howell_form(vstack(A, x)).H == hf.H);
                CHECK(row_span_contains(A, x));
            }
        }
    }
}

TEST_CASE("row span membership is decided exactly") {
    CtxPtr ctx = Context::make(2, 1, 3);
    Mat A = Mat::from_ints(ctx, {{2, 1, 0}});
    CHECK(row_span_contains(A, Mat::from_ints(ctx, {{0, 4, 0}})));
    CHECK(row_span_contains(A, Mat::from_ints(ctx, {{6, 3, 0}})));
    CHECK_FALSE(row_span_contains(A, Mat::from_ints(ctx, {{1, 0, 0}})));
    CHECK_FALSE(row_span_contains(A, Mat::from_ints(ctx, {{2, 1, 1}})));
    CHECK_FALSE(row_span_contains(A, Mat::from_ints(ctx, {{0, 2, 0}})));
}

TEST_CASE("null space against exhaustive enumeration") {
    // Over a four-element chain ring every 2x2 matrix and every candidate
    // vector can be checked directly.
    CtxPtr ctx = Context::make(2, 1, 2);
    std::vector<RingElement> ring = all_elements(ctx);
    REQUIRE(ring.size() == 4);
    for (const RingElement& a : ring)
        for (const RingElement& b : ring)
            for (const RingElement& c : ring)
                for (const RingElement& d : ring) {
                    Mat A = Mat::from_rows(ctx, {{a, b}, {c, d}});
                    Mat K = null_space(A);
                    CHECK((K * A).is_zero());
                    for (const RingElement& x : ring)
                        for (const RingElement& y : ring) {
                            Mat v = Mat::from_rows(ctx, {{x, y}});
                            bool annihilates = (v * A).is_zero();
                            CHECK(annihilates == row_span_contains(K, v));
                        }
                }
}

TEST_CASE("null space catches relations between torsion rows") {
    CtxPtr ctx = Context::make(2, 1, 3);
    Mat A = Mat::from_ints(ctx, {{2, 2}, {2, 2}});
    CHECK(null_space(A) == Mat::from_ints(ctx, {{1, 3}, {0, 4}}));
}

TEST_CASE("certified kernel semantics") {
    SUBCASE("multiplication by p has no saturated kernel") {
        CtxPtr ctx = Context::make(2, 1, 4);
        Mat A = Mat::from_ints(ctx, {{2}});
        CHECK_THROWS_AS(kernel(A), PrecisionExhausted);
        CHECK(kernel(A, true) == Mat::from_ints(ctx, {{8}}));
        CHECK(saturated_kernel(A).rows() == 0);
    }
    SUBCASE("divisors past half precision refuse to certify") {
        CtxPtr ctx = Context::make(2, 1, 4);
        Mat A = Mat::from_ints(ctx, {{8}});
        CHECK_THROWS_AS(kernel(A, true), PrecisionExhausted);
        CHECK_THROWS_AS(saturated_kernel(A), PrecisionExhausted);
        // The same map seen at doubled precision certifies again.
        CtxPtr wide = Context::make(2, 1, 8);
        Mat B = Mat::from_ints(wide, {{8}});
        CHECK(kernel(B, true) == Mat::from_ints(wide, {{32}}));
    }
    SUBCASE("unit-pivot kernels pass untouched") {
        CtxPtr ctx = Context::make(2, 1, 3);
        Mat A = Mat::from_ints(ctx, {{1, 1}, {1, 1}});
        Mat K = kernel(A);
        CHECK(K == Mat::from_ints(ctx, {{1, 7}}));
        CHECK(saturated_kernel(A) == K);
    }
    SUBCASE("mixed kernels split into saturated part and torsion") {
        CtxPtr ctx = Context::make(2, 1, 3);
        Mat A = Mat::from_ints(ctx, {{2, 2}, {2, 2}});
        CHECK_THROWS_AS(kernel(A), PrecisionExhausted);
        CHECK(kernel(A, true) == Mat::from_ints(ctx, {{1, 3}, {0, 4}}));
        CHECK(saturated_kernel(A) == Mat::from_ints(ctx, {{1, 3}}));
    }
    SUBCASE("full-precision divisors are fine: the zero map") {
        CtxPtr ctx = Context::make(3, 1, 4);
        Mat A(ctx, 2, 2);
        CHECK(kernel(A) == Mat::identity(ctx, 2));
    }
}

TEST_CASE("elementary divisor valuations") {
    CtxPtr ctx = Context::make(2, 1, 4);
    CHECK(smith_invariants(Mat::from_ints(ctx, {{1, 0, 0}, {0, 2, 0}, {0, 0, 4}})) ==
          std::vector<int>{0, 1, 2});
    CHECK(smith_invariants(Mat::from_ints(ctx, {{2, 1}, {0, 2}})) == std::vector<int>{0, 2});
    CHECK(smith_invariants(Mat::from_ints(ctx, {{2, 0}, {0, 1}})) == std::vector<int>{0, 1});
    CHECK(smith_invariants(Mat(ctx, 2, 2)) == std::vector<int>{4, 4});
    CHECK(smith_invariants(Mat::from_ints(ctx, {{4}})) == std::vector<int>{2});
    CHECK(smith_invariants(Mat::from_ints(ctx, {{1, 1}, {1, 1}})) == std::vector<int>{0, 4});

    std::mt19937_64 rng(77);
    for (std::int64_t p : {2, 3}) {
        CtxPtr c2 = Context::make(p, 2, 3);
        for (int trial = 0; trial < 60; ++trial) {
            std::size_t r = 1 + rng() % 3, c = 1 + rng() % 3;
            Mat A = random_matrix(c2, r, c, rng);
            std::vector<int> d = smith_invariants(A);
            CHECK(std::is_sorted(d.begin(), d.end()));
            Mat B = A;
            shuffle_rows(B, rng);
            CHECK(smith_invariants(B) == d);
            Mat Bt = A.transpose();
            shuffle_rows(Bt, rng);
            CHECK(smith_invariants(Bt.transpose()) == d);
            CHECK(smith_invariants(A.transpose()) == d);
            if (r == c) {
                int sum = 0;
                for (int v : d) sum += v;
                CHECK(det_valuation(A) == std::min(sum, c2->N()));
            }
        }
    }
}

TEST_CASE("determinant valuation on pinned matrices") {
    CtxPtr ctx = Context::make(2, 1, 4);
    CHECK(det_valuation(Mat::from_ints(ctx, {{2, 0}, {0, 2}})) == 2);
    CHECK(det_valuation(Mat::from_ints(ctx, {{1, 1}, {1, 1}})) == 4);
    CHECK(det_valuation(Mat::from_ints(ctx, {{2, 1}, {1, 1}})) == 0);
    CHECK(det_valuation(Mat::identity(ctx, 3)) == 0);
    CHECK_THROWS_AS(det_valuation(Mat(ctx, 2, 3)), ValidationError);
}

TEST_CASE("matrix inversion") {
    CtxPtr ctx = Context::make(2, 2, 4);
    SUBCASE("pinned") {
        CtxPtr small = Context::make(3, 1, 2);
        Mat A = Mat::from_ints(small, {{1, 1}, {0, 1}});
        CHECK(invert(A) == Mat::from_ints(small, {{1, 8}, {0, 1}}));
        CHECK_THROWS_AS(invert(Mat::from_ints(small, {{3, 0}, {0, 1}})), NotUnit);
        CHECK_THROWS_AS(invert(Mat::from_ints(small, {{1, 1}, {1, 1}})), NotUnit);
    }
    SUBCASE("random round trips") {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 30; ++trial) {
            std::size_t n = 1 + rng() % 4;
            Mat A = random_invertible(ctx, n, rng);
            Mat Ai = invert(A);
            CHECK(A * Ai == Mat::identity(ctx, n));
            CHECK(Ai * A == Mat::identity(ctx, n));
            Mat B = random_matrix(ctx, 2, n, rng);
            CHECK(solve_right_inverse(A, B) * A == B);
        }
    }
}

TEST_CASE("degenerate shapes") {
    CtxPtr ctx = Context::make(2, 1, 2);
    Mat empty_rows(ctx, 0, 3);
    CHECK(howell_form(empty_rows).H == Mat(ctx, 3, 3));
    CHECK(null_space(empty_rows).rows() == 0);
    Mat empty_cols(ctx, 3, 0);
    CHECK(null_space(empty_cols) == Mat::identity(ctx, 3));
    Mat single(ctx, 1, 1);
    single.at(0, 0) = RingElement::one(ctx);
    CHECK(null_space(single).rows() == 0);
}

TEST_CASE("stacking and slicing") {
    CtxPtr ctx = Context::make(3, 1, 2);
    Mat A = Mat::from_ints(ctx, {{1, 2}, {3, 4}});
    Mat B = Mat::from_ints(ctx, {{5, 6}});
    Mat V = vstack(A, B);
    CHECK(V.rows() == 3);
    CHECK(V.submatrix(2, 3, 0, 2) == B);
    Mat Hs = hstack(A, A);
    CHECK(Hs.cols() == 4);
    CHECK(Hs.submatrix(0, 2, 2, 4) == A);
    CHECK(A.transpose().transpose() == A);
    CHECK_THROWS_AS(vstack(A, Mat(ctx, 1, 3)), ValidationError);
    CHECK_THROWS_AS(A * Mat(ctx, 3, 2), ValidationError);
}

TEST_CASE("free row basis finds unit directions shadowed by torsion pivots") {
    CtxPtr ctx = Context::make(2, 1, 4);
    // The span is free of rank two plus two order-two torsion generators.
    // A leftmost-column echelon form of these rows has only one unit pivot:
    // the valuation-one pivot in column two hides the unit in column three,
    // so counting unit pivots there underestimates the free rank.
    Mat G = Mat::from_ints(ctx, {{1, 0, 2, 0}, {0, 0, 14, 1}, {0, 8, 0, 0}, {0, 0, 8, 0}});
    std::vector<int> sm = smith_invariants(G);
    CHECK(std::count(sm.begin(), sm.end(), 0) == 2);
    Mat F = free_row_basis(G);
    REQUIRE(F.rows() == 2);
    CHECK(row_span_contains(G, F));
    CHECK(row_span_basis(F.residue()).rows() == 2);
}

TEST_CASE("free row basis rank matches the valuation-zero Smith count") {
    std::mt19937_64 rng(4242);
    for (auto [p, m, N] : {std::tuple<std::uint64_t, int, int>{2, 1, 5},
                           {3, 1, 4},
                           {2, 2, 3}}) {
        CtxPtr ctx = Context::make(p, m, N);
        for (int trial = 0; trial < 40; ++trial) {
            std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
            Mat A = random_matrix(ctx, r, c, rng);
            if (rng() % 2) A = A.times_p(static_cast<int>(rng() % 2 + 1));
            std::vector<int> sm = smith_invariants(A);
            Mat F = free_row_basis(A);
            CHECK(F.rows() ==
                  static_cast<std::size_t>(std::count(sm.begin(), sm.end(), 0)));
            CHECK(row_span_contains(A, F));
            CHECK(row_span_basis(F.residue()).rows() == F.rows());
        }
    }
}
