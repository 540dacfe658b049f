#include "ordlat/witt.hpp"

namespace ordlat {

bool WittDigits::operator==(const WittDigits& o) const {
    if (!ctx->same_ring(*o.ctx) || digits.size() != o.digits.size()) return false;
    for (std::size_t i = 0; i < digits.size(); ++i)
        if (digits[i] != o.digits[i]) return false;
    return true;
}

WittDigits make_digits(const CtxPtr& ctx, const std::vector<RingElement>& digits) {
    if (digits.empty() || static_cast<int>(digits.size()) > ctx->N())
        throw ValidationError("witt digits: length must be in [1, N]");
    CtxPtr res = ctx->residue();
    WittDigits d{ctx, {}};
    d.digits.reserve(digits.size());
    for (const auto& x : digits) {
        if (!x.valid() || !res->same_tower(*x.ctx()))
            throw ValidationError("witt digits: digit from a different ring");
        d.digits.push_back(x.to_precision(res));
    }
    return d;
}

RingElement frobenius_pow(const RingElement& a, int k) {
    const int m = a.ctx()->m();
    int r = ((k % m) + m) % m;
    RingElement z = a;
    const std::uint64_t p = static_cast<std::uint64_t>(a.ctx()->p());
    for (int i = 0; i < r; ++i) z = z.pow(p);
    return z;
}

WittDigits to_witt_digits(const RingElement& x, int l) {
    const CtxPtr& ctx = x.ctx();
    if (l < 1 || l > ctx->N())
        throw ValidationError("to_witt_digits: l must be in [1, N]");
    WittDigits d{ctx, {}};
    d.digits.reserve(static_cast<std::size_t>(l));
    RingElement y = x;
    for (int j = 0; j < l; ++j) {
        RingElement r = y.residue();
        // The j-th expansion residue is x_j^(p^-j); twist back by Frobenius^j.
        d.digits.push_back(frobenius_pow(r, j));
        if (j + 1 < l) y = (y - teichmuller(ctx, r)).exact_div_p(1);
    }
    return d;
}

RingElement from_witt_digits(const WittDigits& d) {
    const CtxPtr& ctx = d.ctx;
    RingElement x = RingElement::zero(ctx);
    for (int j = 0; j < d.length(); ++j) {
        RingElement tw = frobenius_pow(d.digits[static_cast<std::size_t>(j)], -j);
        x += teichmuller(ctx, tw).times_p(j);
    }
    return x;
}

RingElement Embedding::map(const RingElement& x) const {
    if (!x.valid() || !src->same_tower(*x.ctx()))
        throw ValidationError("embedding: element from a different ring");
    CtxPtr target = dst;
    RingElement gen = gen_image;
    if (x.ctx()->N() != dst->N()) {
        // Allow mapping between matching precisions of the same tower.
        target = dst->with_precision(x.ctx()->N());
        gen = gen_image.to_precision(target);
    }
    RingElement acc = RingElement::zero(target);
    const auto& c = x.coeffs();
    for (std::size_t i = c.size(); i-- > 0;)
        acc = acc * gen + RingElement::from_int(target, static_cast<std::int64_t>(c[i]));
    return acc;
}

RingElement Embedding::map_residue(const RingElement& xbar) const {
    return map(xbar);
}

Embedding extend_context(const CtxPtr& src, int factor) {
    if (factor < 1) throw ValidationError("extend_context: factor must be >= 1");
    CtxPtr dst = Context::make(src->p(), src->m() * factor, src->N());
    const auto& f = src->modulus();
    const int m = src->m();

    // Find the deterministic first root of f over the residue field of dst.
    CtxPtr res = dst->residue();
    std::uint64_t q2 = res->q();
    if (q2 > (1ull << 20))
        throw CapExceeded("extend_context: target residue field too large for root search");
    RingElement root = RingElement();
    for (std::uint64_t k = 0; k < q2; ++k) {
        std::vector<std::int64_t> digitsv(static_cast<std::size_t>(res->m()));
        std::uint64_t t = k;
        for (int i = 0; i < res->m(); ++i) {
            digitsv[static_cast<std::size_t>(i)] =
                static_cast<std::int64_t>(t % static_cast<std::uint64_t>(res->p()));
            t /= static_cast<std::uint64_t>(res->p());
        }
        RingElement z = RingElement::from_coeffs(res, digitsv);
        RingElement val = RingElement::zero(res);
        for (int i = m; i >= 0; --i)
            val = val * z + RingElement::from_int(res, f[static_cast<std::size_t>(i)]);
        if (val.is_zero()) {
            root = z;
            break;
        }
    }
    if (!root.valid()) throw Error("extend_context: modulus has no root in the extension");

    // Hensel-lift the root: z <- z - f(z)/f'(z); the residue root is simple
    // because the modulus is separable.
    RingElement z = root.to_precision(dst);
    auto eval_f = [&](const RingElement& t) {
        RingElement v = RingElement::zero(dst);
        for (int i = m; i >= 0; --i)
            v = v * t + RingElement::from_int(dst, f[static_cast<std::size_t>(i)]);
        return v;
    };
    auto eval_fprime = [&](const RingElement& t) {
        RingElement v = RingElement::zero(dst);
        for (int i = m; i >= 1; --i)
            v = v * t + RingElement::from_int(dst, i * f[static_cast<std::size_t>(i)]);
        return v;
    };
    int steps = 1;
    while ((1 << steps) < dst->N()) ++steps;
    for (int i = 0; i <= steps; ++i)
        z = z - eval_f(z) * eval_fprime(z).inverse();
    if (!eval_f(z).is_zero()) throw Error("extend_context: Hensel lift failed");

    return Embedding{src, dst, z};
}

} // namespace ordlat
