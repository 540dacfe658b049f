#pragma once

#include <vector>

#include "ordlat/element.hpp"

namespace ordlat {

// Witt coordinate vector of length l for an element of W_N(F_{p^m}), 1<=l<=N.
// Digits are residue-field elements (stored over the precision-1 context of
// the full context kept alongside).
struct WittDigits {
    CtxPtr ctx;                       // the full-precision context
    std::vector<RingElement> digits;  // over ctx->residue()

    int length() const { return static_cast<int>(digits.size()); }
    bool operator==(const WittDigits& o) const;
    bool operator!=(const WittDigits& o) const { return !(*this == o); }
};

WittDigits make_digits(const CtxPtr& ctx, const std::vector<RingElement>& digits);

// a^(p^k) in the residue field (k may be any integer; reduced modulo m since
// the q-power Frobenius is the identity).
RingElement frobenius_pow(const RingElement& a, int k);

// Witt coordinates of x through the Frobenius-twisted Teichmuller expansion
//   x = sum_i p^i * teichmuller(x_i^(p^-i)).
// Truncation to l digits realises the natural map W_N -> W_l.
WittDigits to_witt_digits(const RingElement& x, int l);

// Canonical lift: the unique element whose Witt coordinates are the given
// digits followed by zeros.
RingElement from_witt_digits(const WittDigits& d);

// Unramified extension of degree `factor`: a ring homomorphism from
// W_N(F_{p^m}) into W_N(F_{p^(m*factor)}) determined by the deterministic
// first root of the source modulus in the target ring.
struct Embedding {
    CtxPtr src;
    CtxPtr dst;
    RingElement gen_image; // image in dst of the polynomial generator of src

    RingElement map(const RingElement& x) const;
    RingElement map_residue(const RingElement& xbar) const;
};

Embedding extend_context(const CtxPtr& src, int factor);

} // namespace ordlat
