#include "ordlat/genval.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <utility>

#include "ordlat/errors.hpp"

namespace ordlat {

namespace {

void check_exponents(std::size_t vars, const std::vector<int>& exps) {
    if (exps.size() != vars) throw ValidationError("exponent vector length must equal the variable count");
    for (int e : exps)
        if (e < 0) throw ValidationError("exponents must be nonnegative");
}

} // namespace

void PolyO::insert_term(const std::vector<int>& exps, const RingElement& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(exps, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

PolyO PolyO::zero(const CtxPtr& ctx, std::size_t vars) { return PolyO(ctx, vars); }

PolyO PolyO::constant(const CtxPtr& ctx, std::size_t vars, const RingElement& c) {
    PolyO f(ctx, vars);
    f.insert_term(std::vector<int>(vars, 0), c.to_precision(ctx));
    return f;
}

PolyO PolyO::variable(const CtxPtr& ctx, std::size_t vars, std::size_t i) {
    if (i >= vars) throw ValidationError("variable index out of range");
    PolyO f(ctx, vars);
    std::vector<int> exps(vars, 0);
    exps[i] = 1;
    f.insert_term(exps, RingElement::one(ctx));
    return f;
}

PolyO PolyO::make(const CtxPtr& ctx, std::size_t vars,
                  const std::map<std::vector<int>, RingElement>& terms) {
    PolyO f(ctx, vars);
    for (const auto& [exps, c] : terms) {
        check_exponents(vars, exps);
        f.insert_term(exps, c.to_precision(ctx));
    }
    return f;
}

int PolyO::total_degree() const {
    int deg = 0;
    for (const auto& [exps, c] : terms_) {
        int d = 0;
        for (int e : exps) d += e;
        deg = std::max(deg, d);
    }
    return deg;
}

PolyO PolyO::operator+(const PolyO& o) const {
    if (vars_ != o.vars_ || !ctx_->same_ring(*o.ctx_))
        throw ValidationError("polynomial arithmetic requires matching rings and variable counts");
    PolyO out = *this;
    for (const auto& [exps, c] : o.terms_) out.insert_term(exps, c);
    return out;
}

PolyO PolyO::operator-(const PolyO& o) const { return *this + o.scaled(-RingElement::one(o.ctx_)); }

PolyO PolyO::operator*(const PolyO& o) const {
    if (vars_ != o.vars_ || !ctx_->same_ring(*o.ctx_))
        throw ValidationError("polynomial arithmetic requires matching rings and variable counts");
    PolyO out(ctx_, vars_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            std::vector<int> exps(vars_);
            for (std::size_t i = 0; i < vars_; ++i) exps[i] = ea[i] + eb[i];
            out.insert_term(exps, ca * cb);
        }
    return out;
}

PolyO PolyO::scaled(const RingElement& c) const {
    PolyO out(ctx_, vars_);
    for (const auto& [exps, co] : terms_) out.insert_term(exps, co * c);
    return out;
}

PolyO PolyO::times_p(int k) const {
    PolyO out(ctx_, vars_);
    for (const auto& [exps, co] : terms_) out.insert_term(exps, co.times_p(k));
    return out;
}

bool PolyO::operator==(const PolyO& o) const {
    return vars_ == o.vars_ && ctx_->same_ring(*o.ctx_) && terms_ == o.terms_;
}

RingElement PolyO::evaluate(const std::vector<RingElement>& point) const {
    if (point.size() != vars_) throw ValidationError("evaluation point has the wrong arity");
    // Memoised powers per variable.
    std::vector<std::vector<RingElement>> pows(vars_);
    for (std::size_t i = 0; i < vars_; ++i) pows[i].push_back(RingElement::one(ctx_));
    auto power = [&](std::size_t i, int e) {
        while (static_cast<int>(pows[i].size()) <= e)
            pows[i].push_back(pows[i].back() * point[i].to_precision(ctx_));
        return pows[i][static_cast<std::size_t>(e)];
    };
    RingElement acc = RingElement::zero(ctx_);
    for (const auto& [exps, c] : terms_) {
        RingElement term = c;
        for (std::size_t i = 0; i < vars_; ++i)
            if (exps[i] > 0) term *= power(i, exps[i]);
        acc += term;
    }
    return acc;
}

WittPoint make_point(const CtxPtr& ctx, int l, const std::vector<WittDigits>& coords) {
    if (l < 1 || l > ctx->N()) throw ValidationError("digit length must lie in [1, N]");
    for (const WittDigits& d : coords)
        if (d.length() != l) throw ValidationError("all coordinates must have the stated digit length");
    return WittPoint{ctx, coords.size(), l, coords};
}

std::vector<RingElement> zero_tail_lift(const WittPoint& x) {
    std::vector<RingElement> lift;
    lift.reserve(x.vars);
    for (const WittDigits& d : x.coords)
        lift.push_back(from_witt_digits(make_digits(x.ctx, d.digits)));
    return lift;
}

CappedVal naive_valuation(const PolyO& f) {
    if (f.is_zero()) return {f.ctx()->N(), false};
    int best = f.ctx()->N();
    for (const auto& [exps, c] : f.terms()) best = std::min(best, c.valuation());
    return {best, true};
}

PolyO shifted_expansion(const PolyO& f, const WittPoint& x) {
    if (f.vars() != x.vars) throw ValidationError("point arity differs from the variable count");
    if (!f.ctx()->same_ring(*x.ctx))
        throw ValidationError("polynomial and point live over different rings");
    const CtxPtr& ctx = f.ctx();
    std::vector<RingElement> lift = zero_tail_lift(x);

    // Arguments x^_i + p^l Z_i, with powers memoised per variable.
    std::vector<PolyO> args;
    std::vector<std::vector<PolyO>> pows;
    for (std::size_t i = 0; i < f.vars(); ++i) {
        args.push_back(PolyO::constant(ctx, f.vars(), lift[i]) +
                       PolyO::variable(ctx, f.vars(), i).times_p(x.l));
        pows.push_back({PolyO::constant(ctx, f.vars(), RingElement::one(ctx))});
    }
    auto power = [&](std::size_t i, int e) {
        while (static_cast<int>(pows[i].size()) <= e) pows[i].push_back(pows[i].back() * args[i]);
        return pows[i][static_cast<std::size_t>(e)];
    };

    PolyO acc = PolyO::zero(ctx, f.vars());
    for (const auto& [exps, c] : f.terms()) {
        PolyO term = PolyO::constant(ctx, f.vars(), c);
        for (std::size_t i = 0; i < f.vars(); ++i)
            if (exps[i] > 0) term = term * power(i, exps[i]);
        acc = acc + term;
    }
    return acc;
}

CappedVal generic_valuation(const PolyO& f, const WittPoint& x) {
    CappedVal nv = naive_valuation(shifted_expansion(f, x));
    if (nv.exact) return nv;
    return {std::max(0, f.ctx()->N() - x.l * f.total_degree()), false};
}

namespace {

// The reduction of p^{-v} * F to the residue field; nonzero whenever some
// coefficient of F has valuation exactly v.
PolyO residue_quotient(const PolyO& F, int v) {
    CtxPtr k = F.ctx()->residue();
    PolyO g = PolyO::zero(k, F.vars());
    for (const auto& [exps, c] : F.terms()) {
        RingElement r = c.exact_div_p(v).residue();
        if (!r.is_zero()) g = g + PolyO::make(k, F.vars(), {{exps, r}});
    }
    return g;
}

bool nonvanishing_point(const PolyO& g, const CtxPtr& field, std::uint64_t seed,
                        std::vector<RingElement>& out) {
    std::uint64_t q = ring_size(field);
    std::size_t n = g.vars();
    if (n == 0) {
        out.clear();
        return !g.is_zero();
    }
    bool exhaustive = q <= (std::uint64_t{1} << 16);
    std::vector<RingElement> point(n, RingElement::zero(field));
    if (exhaustive) {
        // Odometer over all q^n tuples in a fixed order.
        std::vector<std::uint64_t> idx(n, 0);
        for (;;) {
            for (std::size_t i = 0; i < n; ++i) point[i] = element_from_index(field, idx[i]);
            if (!g.evaluate(point).is_zero()) {
                out = point;
                return true;
            }
            std::size_t pos = 0;
            while (pos < n && idx[pos] + 1 == q) idx[pos++] = 0;
            if (pos == n) return false;
            ++idx[pos];
        }
    }
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<std::uint64_t> dist(0, q - 1);
    for (int trial = 0; trial < 256; ++trial) {
        for (std::size_t i = 0; i < n; ++i) point[i] = element_from_index(field, dist(rng));
        if (!g.evaluate(point).is_zero()) {
            out = point;
            return true;
        }
    }
    return false;
}

} // namespace

Witness witness_lift(const PolyO& f, const WittPoint& x, std::uint64_t seed) {
    const CtxPtr& ctx = f.ctx();
    PolyO F = shifted_expansion(f, x);
    CappedVal nv = naive_valuation(F);
    if (!nv.exact) {
        // Every direction already meets the certified bound.
        return {ctx, 1, std::vector<RingElement>(f.vars(), RingElement::zero(ctx)),
                generic_valuation(f, x)};
    }
    PolyO g = residue_quotient(F, nv.value);

    for (int degree = 1;; ++degree) {
        CtxPtr field = ctx;
        PolyO gd = g;
        if (degree > 1) {
            Embedding e = extend_context(ctx, degree);
            field = e.dst;
            PolyO mapped = PolyO::zero(field->residue(), g.vars());
            for (const auto& [exps, c] : g.terms())
                mapped = mapped + PolyO::make(field->residue(), g.vars(), {{exps, e.map_residue(c)}});
            gd = mapped;
        }
        std::vector<RingElement> zbar;
        if (nonvanishing_point(gd, field->residue(),
                               seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(degree),
                               zbar)) {
            std::vector<RingElement> z;
            z.reserve(zbar.size());
            for (const RingElement& c : zbar) z.push_back(teichmuller(field, c));
            return {field, degree, std::move(z), nv};
        }
    }
}

bool variety_membership(const PolyO& f, const WittPoint& x, int r) {
    if (r < 0) throw ValidationError("threshold must be nonnegative");
    CappedVal v = generic_valuation(f, x);
    if (v.exact) return v.value >= r;
    if (v.value >= r) return true;
    throw PrecisionExhausted("membership at threshold " + std::to_string(r) +
                             " is undecidable: only the bound >= " + std::to_string(v.value) +
                             " is certified at this precision");
}

PolyO transport(const PolyO& f, const Embedding& e) {
    PolyO out = PolyO::zero(e.dst, f.vars());
    for (const auto& [exps, c] : f.terms())
        out = out + PolyO::make(e.dst, f.vars(), {{exps, e.map(c)}});
    return out;
}

WittPoint transport(const WittPoint& x, const Embedding& e) {
    std::vector<WittDigits> coords;
    coords.reserve(x.coords.size());
    for (const WittDigits& d : x.coords) {
        std::vector<RingElement> digits;
        digits.reserve(d.digits.size());
        for (const RingElement& c : d.digits) digits.push_back(e.map_residue(c));
        coords.push_back(make_digits(e.dst, digits));
    }
    return make_point(e.dst, x.l, coords);
}

} // namespace ordlat
