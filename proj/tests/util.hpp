#pragma once

#include <random>
#include <vector>

#include "ordlat/element.hpp"
#include "ordlat/witt.hpp"

namespace testutil {

inline ordlat::RingElement random_element(const ordlat::CtxPtr& ctx, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> dist(0, ctx->pN() - 1);
    std::vector<std::int64_t> c(static_cast<std::size_t>(ctx->m()));
    for (auto& x : c) x = static_cast<std::int64_t>(dist(rng));
    return ordlat::RingElement::from_coeffs(ctx, c);
}

inline ordlat::RingElement random_unit(const ordlat::CtxPtr& ctx, std::mt19937_64& rng) {
    for (;;) {
        ordlat::RingElement x = random_element(ctx, rng);
        if (x.valuation() == 0) return x;
    }
}

// Every ring element, ordered by reading coefficient vectors as base-p^N
// digits.  Only sensible for tiny rings.
inline std::vector<ordlat::RingElement> all_elements(const ordlat::CtxPtr& ctx) {
    std::uint64_t total = 1;
    for (int i = 0; i < ctx->m(); ++i) total *= ctx->pN();
    std::vector<ordlat::RingElement> out;
    out.reserve(total);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t rest = idx;
        std::vector<std::int64_t> c(static_cast<std::size_t>(ctx->m()));
        for (auto& x : c) {
            x = static_cast<std::int64_t>(rest % ctx->pN());
            rest /= ctx->pN();
        }
        out.push_back(ordlat::RingElement::from_coeffs(ctx, c));
    }
    return out;
}

// Residue-field element from an index in [0, q), using base-p digits of the
// index as polynomial coefficients.
inline ordlat::RingElement field_element(const ordlat::CtxPtr& residue_ctx, std::uint64_t index) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(residue_ctx->m()));
    for (int i = 0; i < residue_ctx->m(); ++i) {
        c[static_cast<std::size_t>(i)] =
            static_cast<std::int64_t>(index % static_cast<std::uint64_t>(residue_ctx->p()));
        index /= static_cast<std::uint64_t>(residue_ctx->p());
    }
    return ordlat::RingElement::from_coeffs(residue_ctx, c);
}

} // namespace testutil
