#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "ordlat/context.hpp"
#include "ordlat/element.hpp"
#include "ordlat/linalg.hpp"

namespace ordlat {

class Order;
using OrderPtr = std::shared_ptr<const Order>;

// One summand of a structure-constant expansion: coeff * b_index.
struct SparseTerm {
    std::size_t index;
    RingElement coeff;
};

// An associative unital algebra, free of finite rank over the working chain
// ring, given by structure constants.  products[i][j] lists the expansion of
// b_i * b_j in the basis; sparse storage keeps group-algebra style tables
// (one term per product) cheap even at large rank.
class Order {
public:
    // Checked construction: verifies the identity coordinates and full
    // associativity, throwing IdentityFailure or AssociativityFailure.
    static OrderPtr make(CtxPtr ctx, std::size_t dim,
                         std::vector<std::vector<std::vector<SparseTerm>>> products,
                         std::vector<RingElement> identity,
                         std::vector<std::string> labels = {});

    // Trusted construction for tables that are associative by provenance
    // (derived from a validated order or a group).  Skips the cubic check.
    static OrderPtr make_unchecked(CtxPtr ctx, std::size_t dim,
                                   std::vector<std::vector<std::vector<SparseTerm>>> products,
                                   std::vector<RingElement> identity,
                                   std::vector<std::string> labels = {});

    const CtxPtr& ctx() const { return ctx_; }
    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<SparseTerm>& product(std::size_t i, std::size_t j) const {
        return products_[i][j];
    }
    const std::vector<RingElement>& identity() const { return identity_; }

    std::vector<RingElement> mul_coords(const std::vector<RingElement>& a,
                                        const std::vector<RingElement>& b) const;

    // Matrix of x -> x * a on row vectors (right multiplication).
    Mat right_action(const std::vector<RingElement>& a) const;
    // Matrix of x -> a * x on row vectors (left multiplication).
    Mat left_action(const std::vector<RingElement>& a) const;
    Mat right_action_basis(std::size_t j) const;

    // Valuation of the Gram determinant of the regular trace form, capped at
    // the working precision.  A capped value is the degeneracy warning sign:
    // the residue algebra may fail to be separable.
    int trace_form_det_valuation() const;

    OrderPtr reduce(const CtxPtr& target) const;

    // Structural equality: same ring, dimension, structure constants and
    // identity.  Labels are presentation only and not compared.
    bool same_structure(const Order& other) const;

private:
    Order() = default;

    CtxPtr ctx_;
    std::size_t dim_ = 0;
    std::vector<std::vector<std::vector<SparseTerm>>> products_;
    std::vector<RingElement> identity_;
    std::vector<std::string> labels_;
};

} // namespace ordlat
