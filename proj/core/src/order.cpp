#include "ordlat/order.hpp"

#include <algorithm>
#include <utility>

#include "ordlat/errors.hpp"

namespace ordlat {

namespace {

void add_term(std::vector<RingElement>& acc, const RingElement& scale,
              const std::vector<SparseTerm>& terms) {
    for (const auto& t : terms) acc[t.index] += scale * t.coeff;
}

} // namespace

OrderPtr Order::make_unchecked(CtxPtr ctx, std::size_t dim,
                               std::vector<std::vector<std::vector<SparseTerm>>> products,
                               std::vector<RingElement> identity,
                               std::vector<std::string> labels) {
    if (dim == 0) throw ValidationError("order must have positive rank");
    if (products.size() != dim || identity.size() != dim)
        throw ValidationError("structure constant table shape does not match the rank");
    for (const auto& row : products) {
        if (row.size() != dim)
            throw ValidationError("structure constant table shape does not match the rank");
        for (const auto& terms : row)
            for (const auto& t : terms) {
                if (t.index >= dim) throw ValidationError("structure constant index out of range");
                if (!t.coeff.valid() || !ctx->same_ring(*t.coeff.ctx()))
                    throw ValidationError("structure constant from a different ring");
            }
    }
    for (const auto& x : identity)
        if (!x.valid() || !ctx->same_ring(*x.ctx()))
            throw ValidationError("identity coordinates from a different ring");
    if (!labels.empty() && labels.size() != dim)
        throw ValidationError("label list length does not match the rank");

    auto ord = std::shared_ptr<Order>(new Order());
    ord->ctx_ = std::move(ctx);
    ord->dim_ = dim;
    ord->products_ = std::move(products);
    ord->identity_ = std::move(identity);
    ord->labels_ = std::move(labels);
    return ord;
}

OrderPtr Order::make(CtxPtr ctx, std::size_t dim,
                     std::vector<std::vector<std::vector<SparseTerm>>> products,
                     std::vector<RingElement> identity,
                     std::vector<std::string> labels) {
    OrderPtr ord = make_unchecked(std::move(ctx), dim, std::move(products),
                                  std::move(identity), std::move(labels));
    const CtxPtr& c = ord->ctx();

    auto basis_coords = [&](std::size_t i) {
        std::vector<RingElement> v(dim, RingElement::zero(c));
        v[i] = RingElement::one(c);
        return v;
    };
    for (std::size_t i = 0; i < dim; ++i) {
        std::vector<RingElement> b = basis_coords(i);
        if (ord->mul_coords(ord->identity_, b) != b || ord->mul_coords(b, ord->identity_) != b)
            throw IdentityFailure("claimed identity does not act as one on basis element " +
                                  std::to_string(i));
    }
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            std::vector<RingElement> ij(dim, RingElement::zero(c));
            add_term(ij, RingElement::one(c), ord->product(i, j));
            for (std::size_t k = 0; k < dim; ++k) {
                // (b_i b_j) b_k vs b_i (b_j b_k)
                std::vector<RingElement> lhs(dim, RingElement::zero(c));
                for (std::size_t s = 0; s < dim; ++s)
                    if (!ij[s].is_zero()) add_term(lhs, ij[s], ord->product(s, k));
                std::vector<RingElement> jk(dim, RingElement::zero(c));
                add_term(jk, RingElement::one(c), ord->product(j, k));
                std::vector<RingElement> rhs(dim, RingElement::zero(c));
                for (std::size_t s = 0; s < dim; ++s)
                    if (!jk[s].is_zero()) add_term(rhs, jk[s], ord->product(i, s));
                if (lhs != rhs)
                    throw AssociativityFailure("structure constants are not associative at (" +
                                               std::to_string(i) + ", " + std::to_string(j) +
                                               ", " + std::to_string(k) + ")");
            }
        }
    return ord;
}

std::vector<RingElement> Order::mul_coords(const std::vector<RingElement>& a,
                                           const std::vector<RingElement>& b) const {
    if (a.size() != dim_ || b.size() != dim_)
        throw ValidationError("coordinate vector length does not match the rank");
    std::vector<RingElement> out(dim_, RingElement::zero(ctx_));
    for (std::size_t i = 0; i < dim_; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (b[j].is_zero()) continue;
            RingElement s = a[i] * b[j];
            add_term(out, s, products_[i][j]);
        }
    }
    return out;
}

Mat Order::right_action(const std::vector<RingElement>& a) const {
    Mat out(ctx_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            if (a[j].is_zero()) continue;
            for (const auto& t : products_[i][j]) out.at(i, t.index) += a[j] * t.coeff;
        }
    return out;
}

Mat Order::left_action(const std::vector<RingElement>& a) const {
    Mat out(ctx_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            if (a[j].is_zero()) continue;
            for (const auto& t : products_[j][i]) out.at(i, t.index) += a[j] * t.coeff;
        }
    return out;
}

Mat Order::right_action_basis(std::size_t j) const {
    Mat out(ctx_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (const auto& t : products_[i][j]) out.at(i, t.index) += t.coeff;
    return out;
}

int Order::trace_form_det_valuation() const {
    // tr_s = trace of left multiplication by b_s; the Gram matrix is then
    // bilinear in the structure constants.
    std::vector<RingElement> tr(dim_, RingElement::zero(ctx_));
    for (std::size_t s = 0; s < dim_; ++s)
        for (std::size_t t = 0; t < dim_; ++t)
            for (const auto& term : products_[s][t])
                if (term.index == t) tr[s] += term.coeff;
    Mat gram(ctx_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            RingElement acc = RingElement::zero(ctx_);
            for (const auto& term : products_[i][j]) acc += term.coeff * tr[term.index];
            gram.at(i, j) = acc;
        }
    return det_valuation(gram);
}

bool Order::same_structure(const Order& other) const {
    if (dim_ != other.dim_) return false;
    if (!ctx_->same_ring(*other.ctx_)) return false;
    for (std::size_t i = 0; i < dim_; ++i)
        if (identity_[i] != other.identity_[i]) return false;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            std::vector<RingElement> a(dim_, RingElement::zero(ctx_));
            std::vector<RingElement> b(dim_, RingElement::zero(other.ctx_));
            for (const auto& t : products_[i][j]) a[t.index] += t.coeff;
            for (const auto& t : other.products_[i][j]) b[t.index] += t.coeff;
            for (std::size_t s = 0; s < dim_; ++s)
                if (a[s] != b[s]) return false;
        }
    return true;
}

OrderPtr Order::reduce(const CtxPtr& target) const {
    std::vector<std::vector<std::vector<SparseTerm>>> prods(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        prods[i].resize(dim_);
        for (std::size_t j = 0; j < dim_; ++j)
            for (const auto& t : products_[i][j]) {
                RingElement c = t.coeff.to_precision(target);
                if (!c.is_zero()) prods[i][j].push_back({t.index, c});
            }
    }
    std::vector<RingElement> id;
    id.reserve(dim_);
    for (const auto& x : identity_) id.push_back(x.to_precision(target));
    return make_unchecked(target, dim_, std::move(prods), std::move(id), labels_);
}

} // namespace ordlat
