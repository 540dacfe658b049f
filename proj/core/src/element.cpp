#include "ordlat/element.hpp"

#include <algorithm>
#include <sstream>

namespace ordlat {

RingElement RingElement::zero(const CtxPtr& ctx) {
    return RingElement(ctx, std::vector<std::uint64_t>(static_cast<std::size_t>(ctx->m()), 0));
}

RingElement RingElement::one(const CtxPtr& ctx) { return from_int(ctx, 1); }

RingElement RingElement::from_int(const CtxPtr& ctx, std::int64_t v) {
    std::vector<std::uint64_t> c(static_cast<std::size_t>(ctx->m()), 0);
    std::int64_t pN = static_cast<std::int64_t>(ctx->pN());
    std::int64_t r = v % pN;
    if (r < 0) r += pN;
    c[0] = static_cast<std::uint64_t>(r);
    return RingElement(ctx, std::move(c));
}

RingElement RingElement::from_coeffs(const CtxPtr& ctx, const std::vector<std::int64_t>& coeffs) {
    if (static_cast<int>(coeffs.size()) != ctx->m())
        throw ValidationError("element: expected " + std::to_string(ctx->m()) + " coefficients");
    std::vector<std::uint64_t> c(coeffs.size());
    std::int64_t pN = static_cast<std::int64_t>(ctx->pN());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        std::int64_t r = coeffs[i] % pN;
        if (r < 0) r += pN;
        c[i] = static_cast<std::uint64_t>(r);
    }
    return RingElement(ctx, std::move(c));
}

void RingElement::require_same_ring(const RingElement& o) const {
    if (!ctx_ || !o.ctx_) throw Error("element: operation on empty element");
    if (!ctx_->same_ring(*o.ctx_)) throw ValidationError("element: context mismatch");
}

bool RingElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](std::uint64_t x) { return x == 0; });
}

int RingElement::valuation() const {
    if (!ctx_) throw Error("element: valuation of empty element");
    int best = ctx_->N();
    for (std::uint64_t x : c_) {
        if (x == 0) continue;
        int v = 0;
        std::uint64_t p = static_cast<std::uint64_t>(ctx_->p());
        while (x % p == 0) {
            x /= p;
            ++v;
        }
        best = std::min(best, v);
        if (best == 0) break;
    }
    return best;
}

RingElement RingElement::operator+(const RingElement& o) const {
    require_same_ring(o);
    std::vector<std::uint64_t> r(c_.size());
    const std::uint64_t pN = ctx_->pN();
    for (std::size_t i = 0; i < c_.size(); ++i) {
        std::uint64_t s = c_[i] + o.c_[i];
        r[i] = s >= pN ? s - pN : s;
    }
    return RingElement(ctx_, std::move(r));
}

RingElement RingElement::operator-(const RingElement& o) const {
    require_same_ring(o);
    std::vector<std::uint64_t> r(c_.size());
    const std::uint64_t pN = ctx_->pN();
    for (std::size_t i = 0; i < c_.size(); ++i)
        r[i] = c_[i] >= o.c_[i] ? c_[i] - o.c_[i] : c_[i] + pN - o.c_[i];
    return RingElement(ctx_, std::move(r));
}

RingElement RingElement::operator-() const {
    if (!ctx_) throw Error("element: negation of empty element");
    return zero(ctx_) - *this;
}

RingElement RingElement::operator*(const RingElement& o) const {
    require_same_ring(o);
    const int m = ctx_->m();
    const std::uint64_t pN = ctx_->pN();
    std::vector<unsigned __int128> acc(static_cast<std::size_t>(2 * m - 1), 0);
    for (int i = 0; i < m; ++i) {
        if (c_[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; j < m; ++j) {
            acc[static_cast<std::size_t>(i + j)] +=
                static_cast<unsigned __int128>(c_[static_cast<std::size_t>(i)]) *
                o.c_[static_cast<std::size_t>(j)];
        }
    }
    // Reduce degrees >= m via x^m == top_reduction().
    const auto& red = ctx_->top_reduction();
    for (int k = 2 * m - 2; k >= m; --k) {
        std::uint64_t top = static_cast<std::uint64_t>(acc[static_cast<std::size_t>(k)] % pN);
        acc[static_cast<std::size_t>(k)] = 0;
        if (top == 0) continue;
        for (int i = 0; i < m; ++i)
            acc[static_cast<std::size_t>(k - m + i)] +=
                static_cast<unsigned __int128>(top) * red[static_cast<std::size_t>(i)];
    }
    std::vector<std::uint64_t> r(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        r[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(acc[static_cast<std::size_t>(i)] % pN);
    return RingElement(ctx_, std::move(r));
}

RingElement& RingElement::operator+=(const RingElement& o) { return *this = *this + o; }
RingElement& RingElement::operator-=(const RingElement& o) { return *this = *this - o; }
RingElement& RingElement::operator*=(const RingElement& o) { return *this = *this * o; }

bool RingElement::operator==(const RingElement& o) const {
    require_same_ring(o);
    return c_ == o.c_;
}

RingElement RingElement::pow(std::uint64_t e) const {
    if (!ctx_) throw Error("element: pow of empty element");
    RingElement acc = one(ctx_);
    RingElement base = *this;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

RingElement RingElement::inverse() const {
    if (!ctx_) throw Error("element: inverse of empty element");
    if (valuation() != 0) throw NotUnit("element: inverse of non-unit");
    // Invert the residue by Fermat (a^(q-2) in F_q), then Hensel-lift the
    // inverse with Newton iterations y <- y(2 - xy), doubling precision.
    RingElement r = residue();
    std::uint64_t q = ctx_->q();
    RingElement rinv = r.pow(q - 2);
    RingElement y = rinv.to_precision(ctx_);
    RingElement two = from_int(ctx_, 2);
    int steps = 1;
    while ((1 << steps) < ctx_->N()) ++steps;
    for (int i = 0; i <= steps; ++i) y = y * (two - *this * y);
    return y;
}

RingElement RingElement::times_p(int k) const {
    if (!ctx_) throw Error("element: times_p of empty element");
    if (k < 0) throw Error("element: times_p with negative exponent");
    if (k >= ctx_->N()) return zero(ctx_);
    return *this * from_int(ctx_, static_cast<std::int64_t>(ctx_->p_pow(k)));
}

std::optional<RingElement> RingElement::try_exact_div_p(int k) const {
    if (!ctx_) throw Error("element: division of empty element");
    if (k < 0 || k > ctx_->N()) throw Error("element: bad division exponent");
    const std::uint64_t pk = ctx_->p_pow(k);
    std::vector<std::uint64_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] % pk != 0) return std::nullopt;
        r[i] = c_[i] / pk;
    }
    return RingElement(ctx_, std::move(r));
}

RingElement RingElement::exact_div_p(int k) const {
    auto r = try_exact_div_p(k);
    if (!r) throw Error("element: not divisible by p^" + std::to_string(k));
    return *r;
}

RingElement RingElement::div_floor_p(int k) const {
    if (!ctx_) throw Error("element: division of empty element");
    if (k < 0 || k > ctx_->N()) throw Error("element: bad division exponent");
    const std::uint64_t pk = ctx_->p_pow(k);
    std::vector<std::uint64_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] / pk;
    return RingElement(ctx_, std::move(r));
}

RingElement RingElement::mod_p_pow(int k) const {
    if (!ctx_) throw Error("element: reduction of empty element");
    if (k < 0 || k > ctx_->N()) throw Error("element: bad reduction exponent");
    const std::uint64_t pk = ctx_->p_pow(k);
    std::vector<std::uint64_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] % pk;
    return RingElement(ctx_, std::move(r));
}

RingElement RingElement::to_precision(const CtxPtr& target) const {
    if (!ctx_) throw Error("element: conversion of empty element");
    if (!ctx_->same_tower(*target))
        throw ValidationError("element: precision change across different rings");
    const std::uint64_t pN2 = target->pN();
    std::vector<std::uint64_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] % pN2;
    return RingElement(target, std::move(r));
}

RingElement RingElement::residue() const {
    if (!ctx_) throw Error("element: residue of empty element");
    return to_precision(ctx_->residue());
}

std::string RingElement::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << c_[i];
    }
    os << "]";
    return os.str();
}

RingElement teichmuller(const CtxPtr& ctx, const RingElement& a) {
    if (!a.valid()) throw Error("teichmuller: empty element");
    if (!ctx->same_tower(*a.ctx()))
        throw ValidationError("teichmuller: context mismatch");
    RingElement res = a.to_precision(ctx->residue());
    std::vector<std::uint64_t> memo;
    if (ctx->memo_lookup(res.coeffs(), memo)) {
        std::vector<std::int64_t> c(memo.begin(), memo.end());
        return RingElement::from_coeffs(ctx, c);
    }
    // Fixed point of x -> x^q starting from any lift; each q-th power gains at
    // least one digit of agreement, so N iterations suffice.
    std::uint64_t q = ctx->q();
    RingElement z = res.to_precision(ctx);
    for (int i = 0; i < ctx->N(); ++i) {
        RingElement nz = z.pow(q);
        if (nz == z) break;
        z = nz;
    }
    ctx->memo_store(res.coeffs(), z.coeffs());
    return z;
}


RingElement element_from_index(const CtxPtr& ctx, std::uint64_t index) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(ctx->m()));
    for (auto& x : c) {
        x = static_cast<std::int64_t>(index % ctx->pN());
        index /= ctx->pN();
    }
    return RingElement::from_coeffs(ctx, c);
}

std::uint64_t ring_size(const CtxPtr& ctx) {
    std::uint64_t total = 1;
    for (int i = 0; i < ctx->m(); ++i) {
        if (total > (std::uint64_t{1} << 62) / ctx->pN())
            throw CapExceeded("ring is too large to enumerate");
        total *= ctx->pN();
    }
    return total;
}

} // namespace ordlat
