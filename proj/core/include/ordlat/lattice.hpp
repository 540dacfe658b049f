#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ordlat/linalg.hpp"
#include "ordlat/order.hpp"

namespace ordlat {

// A right module, free over the chain ring, on which the order acts through
// matrices: a row vector x is moved to x * action(b) by the basis element b.
// action is therefore multiplicative, action(b b') = action(b) action(b').
class Lattice {
public:
    // Checked construction: verifies the identity acts as the identity
    // matrix and that the action respects every structure-constant relation.
    // Throws IdentityFailure or MultiplicativityFailure.
    static Lattice make(OrderPtr order, std::vector<Mat> action);
    static Lattice make_unchecked(OrderPtr order, std::vector<Mat> action);

    // The order acting on itself by right multiplication.
    static Lattice regular(const OrderPtr& order);

    const OrderPtr& order() const { return order_; }
    const CtxPtr& ctx() const { return order_->ctx(); }
    std::size_t rank() const { return rank_; }
    const Mat& action(std::size_t j) const { return action_[j]; }

    // Matrix of the element with the given coordinates.
    Mat act(const std::vector<RingElement>& a) const;

    // The same module over a lower precision (or the residue field).
    Lattice reduce(const CtxPtr& target) const;

private:
    Lattice(OrderPtr order, std::size_t rank, std::vector<Mat> action)
        : order_(std::move(order)), rank_(rank), action_(std::move(action)) {}

    OrderPtr order_;
    std::size_t rank_;
    std::vector<Mat> action_;
};

Lattice direct_sum(const Lattice& a, const Lattice& b);

// The sublattice spanned by the rows of basis (an invertible-over-the-
// fraction-field square matrix), with the action rewritten in that basis.
// The conjugated action B action(b) B^{-1} is integral but only determined
// modulo p^(N - v) where v is the largest elementary divisor valuation of B,
// so the result must be requested at a precision target no finer than that;
// anything finer throws PrecisionExhausted.
Lattice sublattice_in_basis(const Lattice& L, const Mat& basis, const CtxPtr& target);

// Saturated basis of the module of intertwiners Hom(L, M), as rank(L) x
// rank(M) matrices.  The underlying kernel computation is certificate
// checked and may throw PrecisionExhausted.
std::vector<Mat> hom_basis(const Lattice& L, const Lattice& M);

std::size_t end_rank(const Lattice& L);

struct RigidityReport {
    std::size_t end_rank;         // rank of the endomorphism module
    std::size_t residue_end_dim;  // dimension of End of the reduction mod p
    bool surjective;              // the two agree, i.e. reduction is onto
};

// Compare End(L) with End of the reduction mod p.  The reduction map is
// injective on a saturated basis, so surjectivity is exactly rank equality.
RigidityReport end_reduction(const Lattice& L);

bool is_rigid(const Lattice& L);

// Invariant factor exponents (sorted, zeros dropped) of Ext^1(L, M),
// computed from Hom(L, M/p^c M) modulo the reductions of genuine
// homomorphisms.  exponent_hint, when given, must be a known bound c with
// p^c Ext = 0 (for group lattices: the p-part of the group order); without
// a hint c is grown until the answer repeats, and StabilizationFailure is
// thrown if precision runs out before that happens.
std::vector<int> ext1_invariants(const Lattice& L, const Lattice& M,
                                 std::optional<int> exponent_hint = std::nullopt);

struct IsoDecision {
    bool isomorphic;
    // Deterministically decided?  Only a negative answer from the randomized
    // branch is uncertain (error probability below 2^-40).
    bool certain;
    // An invertible intertwiner over the base ring, when the search that
    // established the decision produced one.
    std::optional<Mat> witness;
};

// Module isomorphism test.  The residue matrices of a saturated Hom basis
// give a determinant form; the modules are isomorphic exactly when that form
// is not identically zero, which is decided by sweeping small coefficient
// spaces exhaustively and large ones through extension-field evaluation.
IsoDecision is_isomorphic(const Lattice& L, const Lattice& M, std::uint64_t seed = 0);

} // namespace ordlat
