#include "ordlat/ghost.hpp"

#include <mutex>
#include <sstream>

namespace ordlat {

namespace {
constexpr std::size_t kTermBudget = 4'000'000;
}

IntPoly IntPoly::constant(int nvars, const BigInt& c) {
    IntPoly r(nvars);
    if (c != 0) r.terms_.emplace(std::vector<std::uint16_t>(static_cast<std::size_t>(nvars), 0), c);
    return r;
}

IntPoly IntPoly::variable(int nvars, int idx, std::uint16_t exp) {
    if (idx < 0 || idx >= nvars) throw Error("IntPoly: variable index out of range");
    IntPoly r(nvars);
    std::vector<std::uint16_t> e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(idx)] = exp;
    if (exp == 0) return constant(nvars, 1);
    r.terms_.emplace(std::move(e), BigInt(1));
    return r;
}

void IntPoly::add_term(const std::vector<std::uint16_t>& expo, const BigInt& c) {
    auto it = terms_.find(expo);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(expo, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    if (nvars_ != o.nvars_) throw Error("IntPoly: variable count mismatch");
    IntPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    if (nvars_ != o.nvars_) throw Error("IntPoly: variable count mismatch");
    IntPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (nvars_ != o.nvars_) throw Error("IntPoly: variable count mismatch");
    if (terms_.size() * o.terms_.size() > kTermBudget)
        throw CapExceeded("IntPoly: term budget exceeded");
    IntPoly r(nvars_);
    std::vector<std::uint16_t> e(static_cast<std::size_t>(nvars_));
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) {
                std::uint32_t s = static_cast<std::uint32_t>(ea[i]) + eb[i];
                if (s > 0xFFFF) throw CapExceeded("IntPoly: exponent overflow");
                e[i] = static_cast<std::uint16_t>(s);
            }
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

bool IntPoly::operator==(const IntPoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
}

IntPoly IntPoly::pow(std::uint64_t e) const {
    IntPoly acc = constant(nvars_, 1);
    IntPoly base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        if (e >>= 1) base = base * base;
    }
    return acc;
}

IntPoly IntPoly::scaled(const BigInt& c) const {
    IntPoly r(nvars_);
    if (c == 0) return r;
    for (const auto& [e, a] : terms_) r.terms_.emplace(e, a * c);
    return r;
}

IntPoly IntPoly::div_exact(const BigInt& d) const {
    if (d == 0) throw Error("IntPoly: division by zero");
    IntPoly r(nvars_);
    for (const auto& [e, a] : terms_) {
        if (a % d != 0) throw Error("IntPoly: inexact coefficient division");
        r.terms_.emplace(e, a / d);
    }
    return r;
}

RingElement IntPoly::eval_mod_p(const std::vector<RingElement>& vals) const {
    if (static_cast<int>(vals.size()) != nvars_)
        throw Error("IntPoly: wrong number of evaluation arguments");
    if (vals.empty()) throw Error("IntPoly: evaluation needs at least one variable");
    const CtxPtr& ctx = vals[0].ctx();
    if (ctx->N() != 1) throw Error("IntPoly: evaluation arguments must be residue elements");
    const std::int64_t p = ctx->p();
    RingElement acc = RingElement::zero(ctx);
    for (const auto& [e, c] : terms_) {
        std::int64_t cm = static_cast<std::int64_t>(c % p);
        if (cm < 0) cm += p;
        if (cm == 0) continue;
        RingElement t = RingElement::from_int(ctx, cm);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) t *= vals[i].pow(e[i]);
        acc += t;
    }
    return acc;
}

BigInt IntPoly::coefficient(const std::vector<std::uint16_t>& expo) const {
    auto it = terms_.find(expo);
    return it == terms_.end() ? BigInt(0) : it->second;
}

std::string IntPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) os << "*v" << i << "^" << e[i];
    }
    return os.str();
}

namespace {

BigInt big_pow(std::int64_t base, int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

std::uint64_t u64_pow(std::int64_t base, int e) {
    unsigned __int128 r = 1;
    for (int i = 0; i < e; ++i) {
        r *= static_cast<unsigned __int128>(base);
        if (r > 0xFFFF) throw CapExceeded("ghost tables: exponent p^k exceeds 2^16");
    }
    return static_cast<std::uint64_t>(r);
}

IntPoly ghost_w(int n, std::int64_t p, int nvars, int offset) {
    IntPoly w(nvars);
    for (int j = 0; j <= n; ++j) {
        std::uint64_t e = u64_pow(p, n - j);
        IntPoly t = IntPoly::variable(nvars, offset + j, static_cast<std::uint16_t>(e));
        w = w + t.scaled(big_pow(p, j));
    }
    return w;
}

GhostTables compute_tables(int length, std::int64_t p) {
    GhostTables t{p, length, {}, {}};
    const int nvars = 2 * length;
    for (int n = 0; n < length; ++n) {
        IntPoly wx = ghost_w(n, p, nvars, 0);
        IntPoly wy = ghost_w(n, p, nvars, length);
        IntPoly sum_rhs = wx + wy;
        IntPoly prod_rhs = wx * wy;
        for (int j = 0; j < n; ++j) {
            std::uint64_t e = u64_pow(p, n - j);
            sum_rhs = sum_rhs - t.S[static_cast<std::size_t>(j)].pow(e).scaled(big_pow(p, j));
            prod_rhs = prod_rhs - t.P[static_cast<std::size_t>(j)].pow(e).scaled(big_pow(p, j));
        }
        t.S.push_back(sum_rhs.div_exact(big_pow(p, n)));
        t.P.push_back(prod_rhs.div_exact(big_pow(p, n)));
    }
    return t;
}

std::mutex g_tables_mu;
std::map<std::pair<std::int64_t, int>, GhostTables> g_tables;

} // namespace

const GhostTables& ghost_tables(int length, std::int64_t p) {
    if (length < 1) throw ValidationError("ghost tables: length must be >= 1");
    if (!is_prime(p)) throw ValidationError("ghost tables: p must be prime");
    std::lock_guard<std::mutex> lock(g_tables_mu);
    auto key = std::make_pair(p, length);
    auto it = g_tables.find(key);
    if (it == g_tables.end()) it = g_tables.emplace(key, compute_tables(length, p)).first;
    return it->second;
}

GhostPolynomials ghost_oracle(int i, std::int64_t p) {
    if (i < 0) throw ValidationError("ghost oracle: index must be >= 0");
    const GhostTables& t = ghost_tables(i + 1, p);
    return GhostPolynomials{i, t.S[static_cast<std::size_t>(i)], t.P[static_cast<std::size_t>(i)]};
}

IntPoly ghost_component(int n, std::int64_t p, int length, int block) {
    if (n < 0 || n >= length || (block != 0 && block != 1))
        throw ValidationError("ghost component: bad arguments");
    return ghost_w(n, p, 2 * length, block == 0 ? 0 : length);
}

namespace {

WittDigits ghost_apply(const WittDigits& a, const WittDigits& b, bool product) {
    if (!a.ctx->same_ring(*b.ctx) || a.length() != b.length())
        throw ValidationError("ghost arithmetic: operands must share context and length");
    const int l = a.length();
    const GhostTables& t = ghost_tables(l, a.ctx->p());
    std::vector<RingElement> args;
    args.reserve(static_cast<std::size_t>(2 * l));
    for (const auto& d : a.digits) args.push_back(d);
    for (const auto& d : b.digits) args.push_back(d);
    WittDigits out{a.ctx, {}};
    out.digits.reserve(static_cast<std::size_t>(l));
    for (int n = 0; n < l; ++n) {
        const IntPoly& poly = product ? t.P[static_cast<std::size_t>(n)] : t.S[static_cast<std::size_t>(n)];
        out.digits.push_back(poly.eval_mod_p(args));
    }
    return out;
}

} // namespace

WittDigits ghost_add(const WittDigits& a, const WittDigits& b) { return ghost_apply(a, b, false); }
WittDigits ghost_mul(const WittDigits& a, const WittDigits& b) { return ghost_apply(a, b, true); }

} // namespace ordlat
