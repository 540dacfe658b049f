#include "ordlat/context.hpp"

#include <algorithm>
#include <numeric>

namespace ordlat {

namespace {

// --- polynomial helpers over F_p (dense int64 coefficient vectors) ---

using FpPoly = std::vector<std::int64_t>;

std::int64_t floormod(std::int64_t a, std::int64_t p) {
    std::int64_t r = a % p;
    return r < 0 ? r + p : r;
}

void trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly poly_mul_mod(const FpPoly& a, const FpPoly& b, const FpPoly& f, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::int64_t> c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = floormod(c[i + j] + a[i] * b[j], p);
    }
    // reduce modulo monic f
    const std::size_t m = f.size() - 1;
    for (std::size_t k = c.size(); k-- > m;) {
        std::int64_t top = c[k];
        if (top == 0) continue;
        c[k] = 0;
        for (std::size_t i = 0; i < m; ++i)
            c[k - m + i] = floormod(c[k - m + i] - top * f[i], p);
    }
    c.resize(m);
    trim(c);
    return c;
}

// x^(p^e) mod (f, p) by repeated p-th powering of the current residue.
FpPoly pow_x_p_e(int e, const FpPoly& f, std::int64_t p) {
    FpPoly x = {0, 1};
    if (f.size() == 2) x = poly_mul_mod({1}, x, f, p); // degree-1 modulus: reduce
    FpPoly cur = x;
    for (int s = 0; s < e; ++s) {
        // cur <- cur^p via square-and-multiply on the exponent p
        FpPoly acc = {1};
        FpPoly base = cur;
        std::int64_t exp = p;
        while (exp > 0) {
            if (exp & 1) acc = poly_mul_mod(acc, base, f, p);
            base = poly_mul_mod(base, base, f, p);
            exp >>= 1;
        }
        cur = acc;
    }
    return cur;
}

FpPoly poly_sub(const FpPoly& a, const FpPoly& b, std::int64_t p) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::int64_t x = i < a.size() ? a[i] : 0;
        std::int64_t y = i < b.size() ? b[i] : 0;
        r[i] = floormod(x - y, p);
    }
    trim(r);
    return r;
}

FpPoly poly_gcd(FpPoly a, FpPoly b, std::int64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b with b made monic
        std::int64_t lead = b.back();
        if (lead != 1) {
            // multiply b by lead^{-1} (Fermat inverse)
            std::int64_t inv = 1, base = lead, e = p - 2;
            while (e > 0) {
                if (e & 1) inv = floormod(inv * base, p);
                base = floormod(base * base, p);
                e >>= 1;
            }
            for (auto& c : b) c = floormod(c * inv, p);
        }
        while (a.size() >= b.size() && !a.empty()) {
            std::int64_t top = a.back();
            if (top != 0) {
                std::size_t shift = a.size() - b.size();
                for (std::size_t i = 0; i < b.size(); ++i)
                    a[i + shift] = floormod(a[i + shift] - top * b[i], p);
            }
            trim(a);
            if (a.size() < b.size()) break;
            if (!a.empty() && a.back() == 0) trim(a);
        }
        std::swap(a, b);
    }
    trim(a);
    return a;
}

} // namespace

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_irreducible_mod_p(const std::vector<std::int64_t>& f, std::int64_t p) {
    const int m = static_cast<int>(f.size()) - 1;
    if (m < 1 || f[static_cast<std::size_t>(m)] != 1) return false;
    if (m == 1) return true;
    // Rabin test: x^(p^m) == x mod f, and gcd(x^(p^(m/r)) - x, f) == 1 for
    // every prime r dividing m.
    FpPoly x = {0, 1};
    FpPoly xqm = pow_x_p_e(m, f, p);
    if (poly_sub(xqm, x, p) != FpPoly{}) return false;
    int rem = m;
    for (int r = 2; r <= rem; ++r) {
        if (rem % r != 0) continue;
        while (rem % r == 0) rem /= r;
        FpPoly g = poly_gcd(poly_sub(pow_x_p_e(m / r, f, p), x, p), f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

std::vector<std::int64_t> canonical_modulus(std::int64_t p, int m) {
    // Enumerate monic degree-m polynomials in lexicographic coefficient order
    // (constant coefficient as the least significant base-p digit).
    std::uint64_t count = 1;
    for (int i = 0; i < m; ++i) {
        count *= static_cast<std::uint64_t>(p);
        if (count > (1ull << 26))
            throw CapExceeded("canonical_modulus: residue field too large to search");
    }
    for (std::uint64_t k = 0; k < count; ++k) {
        std::vector<std::int64_t> f(static_cast<std::size_t>(m) + 1, 0);
        std::uint64_t t = k;
        for (int i = 0; i < m; ++i) {
            f[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(t % static_cast<std::uint64_t>(p));
            t /= static_cast<std::uint64_t>(p);
        }
        f[static_cast<std::size_t>(m)] = 1;
        if (is_irreducible_mod_p(f, p)) return f;
    }
    throw Error("canonical_modulus: no irreducible polynomial found"); // unreachable
}

CtxPtr Context::make(std::int64_t p, int m, int N) {
    return make(p, m, N, canonical_modulus(p, m));
}

CtxPtr Context::make(std::int64_t p, int m, int N, std::vector<std::int64_t> modulus) {
    if (!is_prime(p)) throw ValidationError("context: p must be prime");
    if (m < 1 || m > 32) throw ValidationError("context: m must be in [1, 32]");
    if (N < 1) throw ValidationError("context: N must be >= 1");
    // Keep p^N small enough that products fit comfortably in 128-bit
    // accumulators and canonical representatives in uint64.
    long double size = 1.0L;
    for (int i = 0; i < N; ++i) {
        size *= static_cast<long double>(p);
        if (size > static_cast<long double>(1ull << 31))
            throw CapExceeded("context: p^N exceeds 2^31");
    }
    if (static_cast<int>(modulus.size()) != m + 1 || modulus[static_cast<std::size_t>(m)] != 1)
        throw ValidationError("context: modulus must be monic of degree m");
    for (int i = 0; i < m; ++i)
        if (modulus[static_cast<std::size_t>(i)] < 0 || modulus[static_cast<std::size_t>(i)] >= p)
            throw ValidationError("context: modulus coefficients must lie in [0, p)");
    if (!is_irreducible_mod_p(modulus, p))
        throw ValidationError("context: modulus is reducible over F_p");

    auto ctx = std::shared_ptr<Context>(new Context());
    ctx->p_ = p;
    ctx->m_ = m;
    ctx->N_ = N;
    ctx->p_pows_.resize(static_cast<std::size_t>(N) + 1);
    ctx->p_pows_[0] = 1;
    for (int i = 1; i <= N; ++i)
        ctx->p_pows_[static_cast<std::size_t>(i)] =
            ctx->p_pows_[static_cast<std::size_t>(i - 1)] * static_cast<std::uint64_t>(p);
    ctx->pN_ = ctx->p_pows_[static_cast<std::size_t>(N)];
    ctx->modulus_ = std::move(modulus);
    ctx->neg_top_.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        std::uint64_t fi = static_cast<std::uint64_t>(ctx->modulus_[static_cast<std::size_t>(i)]);
        ctx->neg_top_[static_cast<std::size_t>(i)] = fi == 0 ? 0 : ctx->pN_ - fi % ctx->pN_;
    }
    return ctx;
}

std::uint64_t Context::q() const {
    unsigned __int128 acc = 1;
    for (int i = 0; i < m_; ++i) {
        acc *= static_cast<unsigned __int128>(p_);
        if (acc > (static_cast<unsigned __int128>(1) << 62))
            throw CapExceeded("context: residue field cardinality exceeds 2^62");
    }
    return static_cast<std::uint64_t>(acc);
}

bool Context::same_ring(const Context& other) const {
    return p_ == other.p_ && m_ == other.m_ && N_ == other.N_ && modulus_ == other.modulus_;
}

bool Context::same_tower(const Context& other) const {
    return p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_;
}

CtxPtr Context::residue() const {
    std::lock_guard<std::mutex> lock(memo_mu_);
    if (!residue_cache_) residue_cache_ = make(p_, m_, 1, modulus_);
    return residue_cache_;
}

CtxPtr Context::with_precision(int N2) const {
    if (N2 == N_) {
        // Cheap value-identical copy; contexts compare by value everywhere.
        return make(p_, m_, N_, modulus_);
    }
    return make(p_, m_, N2, modulus_);
}

bool Context::memo_lookup(const std::vector<std::uint64_t>& key,
                          std::vector<std::uint64_t>& out) const {
    std::lock_guard<std::mutex> lock(memo_mu_);
    auto it = teich_memo_.find(key);
    if (it == teich_memo_.end()) return false;
    out = it->second;
    return true;
}

void Context::memo_store(const std::vector<std::uint64_t>& key,
                         const std::vector<std::uint64_t>& value) const {
    std::lock_guard<std::mutex> lock(memo_mu_);
    teich_memo_.emplace(key, value);
}

} // namespace ordlat
