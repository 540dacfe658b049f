#include "ordlat/group.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "ordlat/errors.hpp"

namespace ordlat {

namespace {

Perm identity_perm(std::size_t degree) {
    Perm g(degree);
    for (std::size_t i = 0; i < degree; ++i) g[i] = i;
    return g;
}

// Apply x first, then y.
Perm compose(const Perm& x, const Perm& y) {
    Perm r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = y[x[i]];
    return r;
}

bool is_permutation(const Perm& g) {
    std::vector<char> seen(g.size(), 0);
    for (std::size_t v : g) {
        if (v >= g.size() || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

// Extend with fixed points, or drop trailing fixed points down to `degree`.
// Returns false when the permutation moves a point at or beyond `degree`.
bool fit_degree(Perm& g, std::size_t degree) {
    for (std::size_t i = degree; i < g.size(); ++i)
        if (g[i] != i) return false;
    for (std::size_t i = 0; i < std::min(g.size(), degree); ++i)
        if (g[i] >= degree) return false;
    if (g.size() > degree) g.resize(degree);
    while (g.size() < degree) g.push_back(g.size());
    return true;
}

} // namespace

Perm parse_cycles(const std::string& text, std::size_t min_degree) {
    std::vector<std::vector<std::size_t>> cycles;
    std::size_t i = 0;
    std::size_t n = text.size();
    auto skip_ws = [&]() {
        while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i < n && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        skip_ws();
        if (i != n) throw ValidationError("unexpected text after identity: " + text);
    }
    while (i < n) {
        if (text[i] != '(')
            throw ValidationError("expected '(' to open a cycle in: " + text);
        ++i;
        std::vector<std::size_t> cyc;
        for (;;) {
            skip_ws();
            while (i < n && text[i] == ',') {
                ++i;
                skip_ws();
            }
            if (i < n && text[i] == ')') {
                ++i;
                break;
            }
            if (i >= n || !std::isdigit(static_cast<unsigned char>(text[i])))
                throw ValidationError("expected a point or ')' in cycle: " + text);
            std::size_t v = 0;
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
                v = v * 10 + static_cast<std::size_t>(text[i] - '0');
                ++i;
                if (v > 1000000) throw ValidationError("point out of range in: " + text);
            }
            if (v == 0) throw ValidationError("points are numbered from 1 in: " + text);
            cyc.push_back(v - 1);
        }
        std::set<std::size_t> distinct(cyc.begin(), cyc.end());
        if (distinct.size() != cyc.size())
            throw ValidationError("repeated point inside one cycle in: " + text);
        cycles.push_back(std::move(cyc));
        skip_ws();
    }
    std::size_t degree = std::max<std::size_t>(min_degree, 1);
    for (const auto& cyc : cycles)
        for (std::size_t v : cyc) degree = std::max(degree, v + 1);
    Perm g = identity_perm(degree);
    for (const auto& cyc : cycles) {
        if (cyc.size() < 2) continue;
        Perm c = identity_perm(degree);
        for (std::size_t k = 0; k < cyc.size(); ++k)
            c[cyc[k]] = cyc[(k + 1) % cyc.size()];
        g = compose(g, c);
    }
    return g;
}

std::vector<Perm> parse_generators(const std::string& text) {
    std::vector<std::string> pieces;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '(') ++depth;
        if (ch == ')') {
            --depth;
            if (depth < 0) throw ValidationError("unbalanced ')' in: " + text);
        }
        if (ch == ',' && depth == 0) {
            pieces.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (depth != 0) throw ValidationError("unbalanced '(' in: " + text);
    pieces.push_back(cur);

    std::vector<Perm> out;
    for (const std::string& piece : pieces) {
        bool blank = true;
        for (char ch : piece)
            if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
        if (blank) continue;
        out.push_back(parse_cycles(piece));
    }
    std::size_t degree = 1;
    for (const Perm& g : out) degree = std::max(degree, g.size());
    for (Perm& g : out)
        while (g.size() < degree) g.push_back(g.size());
    return out;
}

std::string cycle_string(const Perm& g) {
    std::ostringstream os;
    std::vector<char> seen(g.size(), 0);
    bool any = false;
    for (std::size_t start = 0; start < g.size(); ++start) {
        if (seen[start] || g[start] == start) continue;
        any = true;
        os << '(';
        std::size_t cur = start;
        bool first = true;
        while (!seen[cur]) {
            seen[cur] = 1;
            if (!first) os << ' ';
            os << (cur + 1);
            first = false;
            cur = g[cur];
        }
        os << ')';
    }
    if (!any) return "()";
    return os.str();
}

std::size_t GroupData::inverse(std::size_t i) const {
    for (std::size_t j = 0; j < order(); ++j)
        if (table[i][j] == 0) return j;
    throw ValidationError("element without inverse; corrupted group table");
}

std::size_t GroupData::index_of(const Perm& g) const {
    Perm h = g;
    if (!fit_degree(h, degree)) return order();
    for (std::size_t i = 0; i < elements.size(); ++i)
        if (elements[i] == h) return i;
    return order();
}

GroupData make_group(const std::vector<Perm>& generators, std::size_t cap) {
    std::size_t degree = 1;
    for (const Perm& g : generators) {
        if (!is_permutation(g))
            throw ValidationError("generator is not a permutation");
        degree = std::max(degree, g.size());
    }
    GroupData G;
    G.degree = degree;
    for (const Perm& g : generators) {
        Perm h = g;
        fit_degree(h, degree);
        G.generators.push_back(std::move(h));
    }

    std::map<Perm, std::size_t> index;
    G.elements.push_back(identity_perm(degree));
    index[G.elements[0]] = 0;
    for (std::size_t head = 0; head < G.elements.size(); ++head) {
        for (const Perm& s : G.generators) {
            Perm nxt = compose(G.elements[head], s);
            if (index.count(nxt)) continue;
            if (G.elements.size() >= cap)
                throw GroupTooLarge("group order exceeds the cap of " + std::to_string(cap));
            index[nxt] = G.elements.size();
            G.elements.push_back(std::move(nxt));
        }
    }

    std::size_t n = G.elements.size();
    G.table.assign(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            G.table[i][j] = index.at(compose(G.elements[i], G.elements[j]));
    return G;
}

std::vector<std::size_t> subgroup_elements(const GroupData& G, const std::vector<Perm>& gens) {
    std::vector<std::size_t> gidx;
    for (const Perm& g : gens) {
        if (!is_permutation(g))
            throw NotSubgroup("subgroup generator is not a permutation");
        std::size_t idx = G.index_of(g);
        if (idx == G.order())
            throw NotSubgroup("subgroup generator is not an element of the group");
        gidx.push_back(idx);
    }
    std::set<std::size_t> H{0};
    std::vector<std::size_t> work{0};
    for (std::size_t i : gidx)
        if (H.insert(i).second) work.push_back(i);
    while (!work.empty()) {
        std::size_t t = work.back();
        work.pop_back();
        for (std::size_t s : gidx) {
            std::size_t u = G.mul(t, s);
            if (H.insert(u).second) work.push_back(u);
        }
    }
    return std::vector<std::size_t>(H.begin(), H.end());
}

bool is_subgroup(const GroupData& G, const std::vector<std::size_t>& H) {
    if (H.empty()) return false;
    std::set<std::size_t> S(H.begin(), H.end());
    if (S.size() != H.size()) return false;
    for (std::size_t i : H)
        if (i >= G.order()) return false;
    if (!S.count(0)) return false;
    for (std::size_t a : H)
        for (std::size_t b : H)
            if (!S.count(G.mul(a, b))) return false;
    return true;
}

std::vector<std::vector<std::size_t>> all_subgroups(const GroupData& G) {
    if (G.order() > 16)
        throw CapExceeded("subgroup enumeration is limited to groups of order 16");
    auto closure = [&G](std::set<std::size_t> S) {
        S.insert(0);
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<std::size_t> cur(S.begin(), S.end());
            for (std::size_t a : cur)
                for (std::size_t b : cur)
                    if (S.insert(G.mul(a, b)).second) grew = true;
        }
        return std::vector<std::size_t>(S.begin(), S.end());
    };

    std::set<std::vector<std::size_t>> seen;
    std::vector<std::vector<std::size_t>> work;
    std::vector<std::size_t> trivial = closure({});
    seen.insert(trivial);
    work.push_back(trivial);
    for (std::size_t head = 0; head < work.size(); ++head) {
        std::vector<std::size_t> base = work[head];
        for (std::size_t g = 0; g < G.order(); ++g) {
            if (std::binary_search(base.begin(), base.end(), g)) continue;
            std::set<std::size_t> seed(base.begin(), base.end());
            seed.insert(g);
            std::vector<std::size_t> cand = closure(std::move(seed));
            if (seen.insert(cand).second) work.push_back(cand);
        }
    }
    std::vector<std::vector<std::size_t>> out(seen.begin(), seen.end());
    std::stable_sort(out.begin(), out.end(),
                     [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
                         if (a.size() != b.size()) return a.size() < b.size();
                         return a < b;
                     });
    return out;
}

DoubleCosetPartition double_cosets(const GroupData& G, const std::vector<std::size_t>& H) {
    if (!is_subgroup(G, H))
        throw NotSubgroup("double cosets require a subgroup as the index list");
    std::vector<char> assigned(G.order(), 0);
    DoubleCosetPartition out;
    for (std::size_t g = 0; g < G.order(); ++g) {
        if (assigned[g]) continue;
        std::set<std::size_t> dc;
        for (std::size_t h1 : H) {
            std::size_t a = G.mul(h1, g);
            for (std::size_t h2 : H) dc.insert(G.mul(a, h2));
        }
        std::vector<std::size_t> v(dc.begin(), dc.end());
        for (std::size_t x : v) assigned[x] = 1;
        out.cosets.push_back(std::move(v));
    }
    return out;
}

OrderPtr group_order(const GroupData& G, const CtxPtr& ctx) {
    std::size_t n = G.order();
    if (n == 0) throw ValidationError("cannot build an order from an empty group");
    RingElement one = RingElement::one(ctx);
    RingElement zero = RingElement::zero(ctx);
    std::vector<std::vector<std::vector<SparseTerm>>> products(
        n, std::vector<std::vector<SparseTerm>>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            products[i][j] = {SparseTerm{G.mul(i, j), one}};
    std::vector<RingElement> id(n, zero);
    id[0] = one;
    std::vector<std::string> labels;
    labels.reserve(n);
    for (const Perm& g : G.elements) labels.push_back(cycle_string(g));
    return Order::make_unchecked(ctx, n, std::move(products), std::move(id), std::move(labels));
}

Lattice permutation_lattice(const GroupData& G, const std::vector<std::size_t>& H,
                            const CtxPtr& ctx) {
    if (!is_subgroup(G, H))
        throw NotSubgroup("permutation lattice requires a subgroup as the index list");
    std::size_t n = G.order();
    const std::size_t unset = n;
    std::vector<std::size_t> coset_of(n, unset);
    std::vector<std::size_t> reps;
    for (std::size_t g = 0; g < n; ++g) {
        if (coset_of[g] != unset) continue;
        std::size_t id = reps.size();
        reps.push_back(g);
        for (std::size_t h : H) coset_of[G.mul(h, g)] = id;
    }
    std::size_t r = reps.size();
    OrderPtr ord = group_order(G, ctx);
    RingElement one = RingElement::one(ctx);
    std::vector<Mat> action;
    action.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        Mat A(ctx, r, r);
        for (std::size_t i = 0; i < r; ++i) A.at(i, coset_of[G.mul(reps[i], j)]) = one;
        action.push_back(std::move(A));
    }
    return Lattice::make(std::move(ord), std::move(action));
}

EnvelopingOrder enveloping_order(const OrderPtr& lam, std::size_t dim_cap) {
    std::size_t D = lam->dim();
    if (D * D > dim_cap)
        throw CapExceeded("enveloping dimension " + std::to_string(D * D) +
                          " exceeds the cap of " + std::to_string(dim_cap));
    const CtxPtr& ctx = lam->ctx();
    std::size_t E = D * D;
    auto flat = [D](std::size_t i, std::size_t j) { return i * D + j; };

    std::vector<std::vector<std::vector<SparseTerm>>> products(
        E, std::vector<std::vector<SparseTerm>>(E));
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j)
            for (std::size_t k = 0; k < D; ++k)
                for (std::size_t l = 0; l < D; ++l) {
                    // (i,j) * (k,l) expands through (b_k b_i) and (b_j b_l):
                    // the first slot multiplies in the opposite order.
                    std::vector<SparseTerm>& terms = products[flat(i, j)][flat(k, l)];
                    for (const SparseTerm& left : lam->product(k, i))
                        for (const SparseTerm& right : lam->product(j, l)) {
                            RingElement c = left.coeff * right.coeff;
                            if (!c.is_zero())
                                terms.push_back(SparseTerm{flat(left.index, right.index), c});
                        }
                }

    const std::vector<RingElement>& id = lam->identity();
    std::vector<RingElement> env_id(E, RingElement::zero(ctx));
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) env_id[flat(i, j)] = id[i] * id[j];

    std::vector<std::string> labels;
    if (!lam->labels().empty()) {
        labels.reserve(E);
        for (std::size_t i = 0; i < D; ++i)
            for (std::size_t j = 0; j < D; ++j)
                labels.push_back(lam->labels()[i] + " (x) " + lam->labels()[j]);
    }
    OrderPtr env =
        Order::make_unchecked(ctx, E, std::move(products), std::move(env_id), std::move(labels));

    std::vector<Mat> action;
    action.reserve(E);
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) {
            Mat A(ctx, D, D);
            for (std::size_t u = 0; u < D; ++u)
                for (const SparseTerm& t1 : lam->product(i, u))
                    for (const SparseTerm& t2 : lam->product(t1.index, j)) {
                        RingElement c = t1.coeff * t2.coeff;
                        A.at(u, t2.index) += c;
                    }
            action.push_back(std::move(A));
        }
    Lattice diagonal = Lattice::make(env, std::move(action));
    return EnvelopingOrder{std::move(env), std::move(diagonal)};
}

bool hochschild1_vanishes(const OrderPtr& lam) {
    return is_rigid(enveloping_order(lam).diagonal);
}

} // namespace ordlat
