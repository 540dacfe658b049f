#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "ordlat/errors.hpp"

namespace ordlat {

class Context;
using CtxPtr = std::shared_ptr<const Context>;

// Arithmetic context for the ring W_N(F_{p^m}) of truncated Witt vectors,
// realised internally as the Galois ring Z[x]/(p^N, f(x)) where f is the
// canonical monic irreducible polynomial of degree m over F_p.  Elements are
// coefficient vectors of length m with entries in [0, p^N); Witt digit vectors
// are only a conversion layer (see witt.hpp).
//
// Contexts are immutable and shared via CtxPtr.  Two contexts describe the
// same ring iff (p, m, N, modulus) agree; derived contexts (residue field,
// other precision) share the modulus so cross-precision reductions and lifts
// are canonical.
class Context {
public:
    // Canonical modulus: smallest monic irreducible of degree m over F_p in
    // lexicographic coefficient order (constant coefficient least significant).
    static CtxPtr make(std::int64_t p, int m, int N);
    static CtxPtr make(std::int64_t p, int m, int N, std::vector<std::int64_t> modulus);

    std::int64_t p() const { return p_; }
    int m() const { return m_; }
    int N() const { return N_; }
    std::uint64_t pN() const { return pN_; }

    // p^k for 0 <= k <= N.
    std::uint64_t p_pow(int k) const { return p_pows_[static_cast<std::size_t>(k)]; }

    // Residue field cardinality q = p^m.  Throws CapExceeded if q > 2^62.
    std::uint64_t q() const;

    // Monic modulus f, length m+1, coefficients in [0, p); modulus[m] == 1.
    const std::vector<std::int64_t>& modulus() const { return modulus_; }

    // Reduction row: x^m == sum_i top_reduction()[i] * x^i  (mod p^N, f).
    const std::vector<std::uint64_t>& top_reduction() const { return neg_top_; }

    bool same_ring(const Context& other) const;
    // Same p, m and modulus (precision may differ).
    bool same_tower(const Context& other) const;

    CtxPtr residue() const;              // precision-1 context over the same modulus
    CtxPtr with_precision(int N2) const; // same tower, precision N2

    // Teichmuller memo table; keyed by residue coefficient vectors.
    bool memo_lookup(const std::vector<std::uint64_t>& key,
                     std::vector<std::uint64_t>& out) const;
    void memo_store(const std::vector<std::uint64_t>& key,
                    const std::vector<std::uint64_t>& value) const;

private:
    Context() = default;

    std::int64_t p_ = 0;
    int m_ = 0;
    int N_ = 0;
    std::uint64_t pN_ = 0;
    std::vector<std::uint64_t> p_pows_;
    std::vector<std::int64_t> modulus_;
    std::vector<std::uint64_t> neg_top_;

    mutable std::mutex memo_mu_;
    mutable std::map<std::vector<std::uint64_t>, std::vector<std::uint64_t>> teich_memo_;
    mutable CtxPtr residue_cache_;
};

bool is_prime(std::int64_t n);

// Irreducibility over F_p of a monic polynomial given by its coefficient
// vector (length deg+1, constant first).
bool is_irreducible_mod_p(const std::vector<std::int64_t>& f, std::int64_t p);

// The canonical degree-m modulus used by Context::make(p, m, N).
std::vector<std::int64_t> canonical_modulus(std::int64_t p, int m);

} // namespace ordlat
