#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordlat/context.hpp"

namespace ordlat {

// Element of W_N(F_{p^m}) in Galois-ring coordinates: a vector of m integers
// in [0, p^N), the coefficients of a polynomial representative of degree < m.
// All operations are exact modulo p^N.
class RingElement {
public:
    RingElement() = default; // empty element; using it in arithmetic throws

    static RingElement zero(const CtxPtr& ctx);
    static RingElement one(const CtxPtr& ctx);
    static RingElement from_int(const CtxPtr& ctx, std::int64_t v);
    static RingElement from_coeffs(const CtxPtr& ctx, const std::vector<std::int64_t>& coeffs);

    const CtxPtr& ctx() const { return ctx_; }
    bool valid() const { return static_cast<bool>(ctx_); }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }

    bool is_zero() const;
    // p-adic valuation in [0, N]; the zero residue class has valuation N.
    int valuation() const;

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator*(const RingElement& o) const;
    RingElement operator-() const;
    RingElement& operator+=(const RingElement& o);
    RingElement& operator-=(const RingElement& o);
    RingElement& operator*=(const RingElement& o);
    bool operator==(const RingElement& o) const;
    bool operator!=(const RingElement& o) const { return !(*this == o); }

    RingElement pow(std::uint64_t e) const;

    // Multiplicative inverse; throws NotUnit when valuation > 0.
    RingElement inverse() const;

    // Multiply by p^k (k >= 0), modulo p^N.
    RingElement times_p(int k) const;

    // Exact division by p^k; throws Error when a coefficient is not divisible.
    // The result is canonical for the representative with coefficients in
    // [0, p^N); it is well defined modulo p^(N-k) only.
    RingElement exact_div_p(int k) const;
    std::optional<RingElement> try_exact_div_p(int k) const;

    // Coefficientwise floor division by p^k on canonical representatives:
    // *this == div_floor_p(k) * p^k + mod_p_pow(k).
    RingElement div_floor_p(int k) const;
    // Canonical representative modulo p^k (coefficients reduced into [0, p^k)).
    RingElement mod_p_pow(int k) const;

    // Move to another precision in the same tower: reduction when the target
    // precision is lower, canonical-representative lift when higher.
    RingElement to_precision(const CtxPtr& target) const;
    // Image in the residue field (precision-1 context).
    RingElement residue() const;

    std::string str() const;

private:
    RingElement(CtxPtr ctx, std::vector<std::uint64_t> c)
        : ctx_(std::move(ctx)), c_(std::move(c)) {}
    void require_same_ring(const RingElement& o) const;

    CtxPtr ctx_;
    std::vector<std::uint64_t> c_;
};

// Teichmuller lift: the unique root of x^q = x in W_N(F_{p^m}) reducing to the
// given residue-field element.  `a` may live in ctx's residue field or in ctx
// itself (only its residue is used).  Results are memoised on the context.
RingElement teichmuller(const CtxPtr& ctx, const RingElement& a);

// Deterministic enumeration of ring elements: coefficient vectors are read
// as base-p^N digits of the index.  Index 0 is zero, index 1 is one.
RingElement element_from_index(const CtxPtr& ctx, std::uint64_t index);

// Number of elements of the ring, throwing CapExceeded past 2^62.
std::uint64_t ring_size(const CtxPtr& ctx);

} // namespace ordlat
