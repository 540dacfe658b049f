#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ordlat/element.hpp"
#include "ordlat/witt.hpp"

namespace ordlat {

// Multivariate polynomial over the working ring, keyed by exponent vectors.
// Zero coefficients are never stored, so the stored minimum coefficient
// valuation is always strictly below N.
class PolyO {
public:
    static PolyO zero(const CtxPtr& ctx, std::size_t vars);
    static PolyO constant(const CtxPtr& ctx, std::size_t vars, const RingElement& c);
    static PolyO variable(const CtxPtr& ctx, std::size_t vars, std::size_t i);
    static PolyO make(const CtxPtr& ctx, std::size_t vars,
                      const std::map<std::vector<int>, RingElement>& terms);

    const CtxPtr& ctx() const { return ctx_; }
    std::size_t vars() const { return vars_; }
    const std::map<std::vector<int>, RingElement>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // Total degree; 0 for the zero polynomial.
    int total_degree() const;

    PolyO operator+(const PolyO& o) const;
    PolyO operator-(const PolyO& o) const;
    PolyO operator*(const PolyO& o) const;
    PolyO scaled(const RingElement& c) const;
    PolyO times_p(int k) const;
    bool operator==(const PolyO& o) const;
    bool operator!=(const PolyO& o) const { return !(*this == o); }

    RingElement evaluate(const std::vector<RingElement>& point) const;

private:
    PolyO(CtxPtr ctx, std::size_t vars) : ctx_(std::move(ctx)), vars_(vars) {}
    void insert_term(const std::vector<int>& exps, const RingElement& c);

    CtxPtr ctx_;
    std::size_t vars_;
    std::map<std::vector<int>, RingElement> terms_;
};

// A point of the length-l Witt coordinate space in n variables: one digit
// vector of length l per variable.
struct WittPoint {
    CtxPtr ctx;
    std::size_t vars;
    int l;
    std::vector<WittDigits> coords;
};

WittPoint make_point(const CtxPtr& ctx, int l, const std::vector<WittDigits>& coords);

// The canonical lift of each coordinate: the element whose digit vector is
// the given one followed by zeros.
std::vector<RingElement> zero_tail_lift(const WittPoint& x);

// A valuation possibly truncated by the working precision: when `exact` is
// false only the lower bound `value` is certified.
struct CappedVal {
    int value;
    bool exact;

    bool operator==(const CappedVal& o) const {
        return value == o.value && exact == o.exact;
    }
    bool operator!=(const CappedVal& o) const { return !(*this == o); }
};

// Minimal coefficient valuation; the zero polynomial reports ">= N".
CappedVal naive_valuation(const PolyO& f);

// f(x^ + p^l Z) as an exact polynomial in the indeterminates Z, where x^ is
// the zero-tail lift of x.
PolyO shifted_expansion(const PolyO& f, const WittPoint& x);

// Generic valuation of f at x: the minimum of nu_p(f(y)) over all lifts y
// of x, computed as the naive valuation of the shifted expansion.  When the
// expansion vanishes at the working precision the certified lower bound
// N - l * deg(f) is reported with exact = false.
CappedVal generic_valuation(const PolyO& f, const WittPoint& x);

// A lift direction achieving the generic valuation, found over the smallest
// residue extension where the reduced shifted expansion has a non-vanishing
// point.  Fields of size at most 2^16 are swept exhaustively in a fixed
// order; larger ones are sampled with the seeded generator before moving to
// the next degree.
struct Witness {
    CtxPtr field;                // context of the extension the entries live in
    int extension_degree;        // 1 means the base field sufficed
    std::vector<RingElement> z;  // Teichmuller entries over `field`
    CappedVal value;             // the valuation the witness achieves
};

Witness witness_lift(const PolyO& f, const WittPoint& x, std::uint64_t seed = 0);

// Pointwise membership test for the locus "generic valuation >= r".  Throws
// PrecisionExhausted when the capped bound cannot decide the comparison.
bool variety_membership(const PolyO& f, const WittPoint& x, int r);

// Transport along an unramified extension embedding.
PolyO transport(const PolyO& f, const Embedding& e);
WittPoint transport(const WittPoint& x, const Embedding& e);

} // namespace ordlat
