#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ordlat/witt.hpp"

namespace ordlat {

using BigInt = boost::multiprecision::cpp_int;

// Multivariate polynomial with exact integer coefficients, used by the ghost
// component oracle.  Term map keyed by exponent vectors of fixed length.
class IntPoly {
public:
    explicit IntPoly(int nvars) : nvars_(nvars) {}

    static IntPoly constant(int nvars, const BigInt& c);
    static IntPoly variable(int nvars, int idx, std::uint16_t exp = 1);

    int nvars() const { return nvars_; }
    const std::map<std::vector<std::uint16_t>, BigInt>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    bool operator==(const IntPoly& o) const;
    bool operator!=(const IntPoly& o) const { return !(*this == o); }

    IntPoly pow(std::uint64_t e) const;
    IntPoly scaled(const BigInt& c) const;
    // Divide every coefficient by d; throws Error if any division is inexact.
    IntPoly div_exact(const BigInt& d) const;

    // Evaluate with coefficients reduced modulo p at residue-field arguments
    // (all over the same precision-1 context, one value per variable).
    RingElement eval_mod_p(const std::vector<RingElement>& vals) const;

    // Coefficient of a specific exponent vector (zero if absent).
    BigInt coefficient(const std::vector<std::uint16_t>& expo) const;

    std::string str() const;

private:
    void add_term(const std::vector<std::uint16_t>& expo, const BigInt& c);

    int nvars_;
    std::map<std::vector<std::uint16_t>, BigInt> terms_;
};

// Universal Witt sum/product polynomials S_0..S_{l-1}, P_0..P_{l-1} for the
// prime p, solved recursively from the ghost component identities
//   w_n(S) = w_n(X) + w_n(Y),  w_n(P) = w_n(X) * w_n(Y),
// where w_n(Z) = sum_{j<=n} p^j Z_j^(p^(n-j)).  Variable layout: X_j has
// index j and Y_j has index l + j (nvars = 2l).
struct GhostTables {
    std::int64_t p;
    int length;
    std::vector<IntPoly> S;
    std::vector<IntPoly> P;
};

const GhostTables& ghost_tables(int length, std::int64_t p);

// The pair (S_i, P_i) in the 2(i+1)-variable layout.
struct GhostPolynomials {
    int index;
    IntPoly S;
    IntPoly P;
};

GhostPolynomials ghost_oracle(int i, std::int64_t p);

// Ghost polynomial w_n in the X block (selector 0) or Y block (selector 1) of
// the 2l-variable layout; exposed for identity checks in tests.
IntPoly ghost_component(int n, std::int64_t p, int length, int block);

// Digit-path arithmetic on Witt coordinate vectors: componentwise evaluation
// of the universal polynomials over the residue field.
WittDigits ghost_add(const WittDigits& a, const WittDigits& b);
WittDigits ghost_mul(const WittDigits& a, const WittDigits& b);

} // namespace ordlat
