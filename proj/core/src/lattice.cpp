#include "ordlat/lattice.hpp"

#include <algorithm>
#include <random>
#include <utility>

#include "ordlat/errors.hpp"
#include "ordlat/witt.hpp"

namespace ordlat {

Lattice Lattice::make_unchecked(OrderPtr order, std::vector<Mat> action) {
    if (!order) throw ValidationError("lattice needs an order");
    if (action.size() != order->dim())
        throw ValidationError("one action matrix per basis element is required");
    std::size_t rank = action.empty() ? 0 : action.front().rows();
    for (const Mat& a : action) {
        if (a.rows() != rank || a.cols() != rank)
            throw ValidationError("action matrices must be square of equal size");
        if (!a.ctx()->same_ring(*order->ctx()))
            throw ValidationError("action matrices live over a different ring than the order");
    }
    return Lattice(std::move(order), rank, std::move(action));
}

Lattice Lattice::make(OrderPtr order, std::vector<Mat> action) {
    Lattice L = make_unchecked(std::move(order), std::move(action));
    const Order& ord = *L.order();
    const CtxPtr& ctx = ord.ctx();
    if (L.act(ord.identity()) != Mat::identity(ctx, L.rank()))
        throw IdentityFailure("the identity of the order does not act as the identity matrix");
    for (std::size_t i = 0; i < ord.dim(); ++i)
        for (std::size_t j = 0; j < ord.dim(); ++j) {
            Mat expect(ctx, L.rank(), L.rank());
            for (const auto& t : ord.product(i, j)) expect = expect + L.action(t.index).scaled(t.coeff);
            if (L.action(i) * L.action(j) != expect)
                throw MultiplicativityFailure(
                    "action does not respect the product of basis elements " +
                    std::to_string(i) + " and " + std::to_string(j));
        }
    return L;
}

Lattice Lattice::regular(const OrderPtr& order) {
    std::vector<Mat> action;
    action.reserve(order->dim());
    for (std::size_t j = 0; j < order->dim(); ++j) action.push_back(order->right_action_basis(j));
    return make_unchecked(order, std::move(action));
}

Mat Lattice::act(const std::vector<RingElement>& a) const {
    if (a.size() != order_->dim())
        throw ValidationError("coordinate vector length does not match the order");
    Mat out(ctx(), rank_, rank_);
    for (std::size_t j = 0; j < a.size(); ++j)
        if (!a[j].is_zero()) out = out + action_[j].scaled(a[j]);
    return out;
}

Lattice Lattice::reduce(const CtxPtr& target) const {
    OrderPtr ord = order_->reduce(target);
    std::vector<Mat> action;
    action.reserve(action_.size());
    for (const Mat& a : action_) action.push_back(a.reduce(target));
    return Lattice(std::move(ord), rank_, std::move(action));
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
    if (a.order() != b.order())
        throw ValidationError("direct summands must share one order object");
    std::vector<Mat> action;
    for (std::size_t j = 0; j < a.order()->dim(); ++j) {
        Mat blk(a.ctx(), a.rank() + b.rank(), a.rank() + b.rank());
        for (std::size_t r = 0; r < a.rank(); ++r)
            for (std::size_t c = 0; c < a.rank(); ++c) blk.at(r, c) = a.action(j).at(r, c);
        for (std::size_t r = 0; r < b.rank(); ++r)
            for (std::size_t c = 0; c < b.rank(); ++c)
                blk.at(a.rank() + r, a.rank() + c) = b.action(j).at(r, c);
        action.push_back(std::move(blk));
    }
    return Lattice::make_unchecked(a.order(), std::move(action));
}

Lattice sublattice_in_basis(const Lattice& L, const Mat& basis, const CtxPtr& target) {
    const CtxPtr& ctx = L.ctx();
    if (basis.rows() != L.rank() || basis.cols() != L.rank())
        throw ValidationError("sublattice basis must be square of the lattice rank");
    if (!basis.ctx()->same_ring(*ctx)) throw ValidationError("basis over a different ring");
    int worst = 0;
    for (int v : smith_invariants(basis)) {
        if (v >= ctx->N())
            throw ValidationError("sublattice basis does not have full rank");
        worst = std::max(worst, v);
    }
    if (target->N() > ctx->N() - worst)
        throw PrecisionExhausted("conjugated action is only determined to precision " +
                                 std::to_string(ctx->N() - worst));

    HowellForm hf = howell_form(basis);
    // hf.H is upper triangular with pivot p^{v_j} at (j, j); solving
    // z * H = c by forward substitution and mapping back through U solves
    // x * basis = c exactly whenever an integral solution exists.
    std::vector<int> pivot_val(L.rank());
    for (std::size_t j = 0; j < L.rank(); ++j) pivot_val[j] = hf.H.at(j, j).valuation();

    auto solve_row = [&](const Mat& C, std::size_t row) {
        std::vector<RingElement> z(L.rank(), RingElement::zero(ctx));
        for (std::size_t j = 0; j < L.rank(); ++j) {
            RingElement rhs = C.at(row, j);
            for (std::size_t k = 0; k < j; ++k)
                if (!hf.H.at(k, j).is_zero()) rhs -= z[k] * hf.H.at(k, j);
            auto q = rhs.try_exact_div_p(pivot_val[j]);
            if (!q)
                throw NotStable("the span of the given basis is not stable under the action");
            z[j] = *q;
        }
        return z;
    };

    OrderPtr ord_t = L.order()->reduce(target);
    std::vector<Mat> action;
    action.reserve(L.order()->dim());
    for (std::size_t b = 0; b < L.order()->dim(); ++b) {
        Mat C = basis * L.action(b);
        Mat X(ctx, L.rank(), L.rank());
        for (std::size_t r = 0; r < L.rank(); ++r) {
            std::vector<RingElement> z = solve_row(C, r);
            for (std::size_t j = 0; j < L.rank(); ++j)
                for (std::size_t k = 0; k < L.rank(); ++k)
                    X.at(r, k) += z[j] * hf.U.at(j, k);
        }
        action.push_back(X.reduce(target));
    }
    return Lattice::make_unchecked(std::move(ord_t), std::move(action));
}

namespace {

// Linear system whose left kernel vectors are exactly the intertwiners
// F (flattened row-major) with action_L(b) F = F action_M(b) for every b.
Mat intertwiner_system(const Lattice& L, const Lattice& M) {
    const CtxPtr& ctx = L.ctx();
    std::size_t rL = L.rank(), rM = M.rank(), n = L.order()->dim();
    Mat A(ctx, rL * rM, n * rL * rM);
    for (std::size_t b = 0; b < n; ++b) {
        std::size_t colbase = b * rL * rM;
        const Mat& DL = L.action(b);
        const Mat& DM = M.action(b);
        for (std::size_t r = 0; r < rL; ++r)
            for (std::size_t u = 0; u < rL; ++u) {
                const RingElement& a = DL.at(r, u);
                if (a.is_zero()) continue;
                for (std::size_t s = 0; s < rM; ++s)
                    A.at(u * rM + s, colbase + r * rM + s) += a;
            }
        for (std::size_t v = 0; v < rM; ++v)
            for (std::size_t s = 0; s < rM; ++s) {
                const RingElement& a = DM.at(v, s);
                if (a.is_zero()) continue;
                for (std::size_t r = 0; r < rL; ++r)
                    A.at(r * rM + v, colbase + r * rM + s) -= a;
            }
    }
    return A;
}

void require_compatible(const Lattice& L, const Lattice& M) {
    if (L.order()->dim() != M.order()->dim() || !L.ctx()->same_ring(*M.ctx()))
        throw ValidationError("lattices are not over a common order");
}

Mat unflatten(const Lattice& L, const Lattice& M, const Mat& K, std::size_t row) {
    Mat F(L.ctx(), L.rank(), M.rank());
    for (std::size_t u = 0; u < L.rank(); ++u)
        for (std::size_t v = 0; v < M.rank(); ++v) F.at(u, v) = K.at(row, u * M.rank() + v);
    return F;
}

} // namespace

std::vector<Mat> hom_basis(const Lattice& L, const Lattice& M) {
    require_compatible(L, M);
    if (L.rank() == 0 || M.rank() == 0) return {};
    Mat K = saturated_kernel(intertwiner_system(L, M));
    std::vector<Mat> out;
    out.reserve(K.rows());
    for (std::size_t i = 0; i < K.rows(); ++i) out.push_back(unflatten(L, M, K, i));
    return out;
}

std::size_t end_rank(const Lattice& L) { return hom_basis(L, L).size(); }

RigidityReport end_reduction(const Lattice& L) {
    std::size_t d = end_rank(L);
    Lattice Lbar = L.reduce(L.ctx()->residue());
    std::size_t e = end_rank(Lbar);
    if (d > e)
        throw Error("endomorphism rank exceeds its residue bound; this contradicts "
                    "injectivity of reduction and indicates a corrupted input");
    return RigidityReport{d, e, d == e};
}

bool is_rigid(const Lattice& L) { return end_reduction(L).surjective; }

namespace {

std::vector<int> ext1_at(const Lattice& L, const Lattice& M,
                         const std::vector<Mat>& homs, int c) {
    CtxPtr target = L.ctx()->with_precision(c);
    Lattice Lc = L.reduce(target);
    // Reuse the reduced order so both reductions share one object.
    Lattice Mc = Lattice::make_unchecked(
        Lc.order(), [&] {
            std::vector<Mat> act;
            act.reserve(M.order()->dim());
            for (std::size_t j = 0; j < M.order()->dim(); ++j)
                act.push_back(M.action(j).reduce(target));
            return act;
        }());
    Mat GS = null_space(intertwiner_system(Lc, Mc));
    std::size_t a = GS.rows();
    if (a == 0) return {};

    std::size_t k = L.rank() * M.rank();
    Mat GT(target, homs.size(), k);
    for (std::size_t i = 0; i < homs.size(); ++i)
        for (std::size_t u = 0; u < L.rank(); ++u)
            for (std::size_t v = 0; v < M.rank(); ++v)
                GT.at(i, u * M.rank() + v) = homs[i].at(u, v).to_precision(target);

    // Relations among the chosen generators of Hom(L, M/p^c M) relative to
    // the reduced genuine homomorphisms present the quotient, which by the
    // long exact sequence is the p^c-torsion of Ext^1.
    Mat Krel = null_space(vstack(GS, GT));
    Mat Rel = Krel.submatrix(0, Krel.rows(), 0, a);
    std::vector<int> divisors = smith_invariants(Rel);
    std::vector<int> exps;
    for (int dval : divisors)
        if (dval > 0) exps.push_back(dval);
    for (std::size_t i = divisors.size(); i < a; ++i) exps.push_back(c);
    std::sort(exps.begin(), exps.end());
    return exps;
}

} // namespace

std::vector<int> ext1_invariants(const Lattice& L, const Lattice& M,
                                 std::optional<int> exponent_hint) {
    require_compatible(L, M);
    if (L.rank() == 0 || M.rank() == 0) return {};
    std::vector<Mat> homs = hom_basis(L, M);
    int N = L.ctx()->N();
    if (exponent_hint) {
        int c = *exponent_hint;
        if (c < 0) throw ValidationError("exponent hint must be nonnegative");
        if (c == 0) return {};
        if (c > N - 1)
            throw PrecisionExhausted("exponent hint " + std::to_string(c) +
                                     " needs working precision above " + std::to_string(N));
        return ext1_at(L, M, homs, c);
    }
    std::vector<int> prev = ext1_at(L, M, homs, 1);
    for (int c = 2; c <= N - 1; ++c) {
        std::vector<int> cur = ext1_at(L, M, homs, c);
        if (cur == prev) return cur;
        prev = std::move(cur);
    }
    throw StabilizationFailure(
        "invariants did not repeat below the working precision; raise it or "
        "supply an exponent bound");
}

namespace {

RingElement det_residue(const Mat& A) {
    // Over a residue field the determinant valuation is 0 or 1; reuse the
    // chain-ring machinery and report a unit flag via an element.
    return det_valuation(A) == 0 ? RingElement::one(A.ctx()) : RingElement::zero(A.ctx());
}

bool unit_combination(const std::vector<Mat>& mats, const std::vector<RingElement>& coef) {
    Mat acc(mats.front().ctx(), mats.front().rows(), mats.front().cols());
    for (std::size_t i = 0; i < mats.size(); ++i)
        if (!coef[i].is_zero()) acc = acc + mats[i].scaled(coef[i]);
    return !det_residue(acc).is_zero();
}

Mat lift_witness(const Lattice& L, const std::vector<Mat>& homs,
                 const std::vector<RingElement>& coef) {
    Mat W(L.ctx(), homs.front().rows(), homs.front().cols());
    for (std::size_t i = 0; i < homs.size(); ++i) {
        if (coef[i].is_zero()) continue;
        W = W + homs[i].scaled(teichmuller(L.ctx(), coef[i]));
    }
    return W;
}

} // namespace

IsoDecision is_isomorphic(const Lattice& L, const Lattice& M, std::uint64_t seed) {
    require_compatible(L, M);
    if (L.rank() != M.rank()) return {false, true, std::nullopt};
    if (L.rank() == 0) return {true, true, Mat(L.ctx(), 0, 0)};
    std::vector<Mat> homs = hom_basis(L, M);
    std::size_t d = homs.size();
    if (d == 0) return {false, true, std::nullopt};

    CtxPtr k = L.ctx()->residue();
    std::uint64_t q = k->q();
    std::size_t r = L.rank();
    std::vector<Mat> res;
    res.reserve(d);
    for (const Mat& F : homs) res.push_back(F.residue());

    // Exhaustive base-field sweep when the coefficient space is small: both
    // directions of the decision are then certain and a positive answer comes
    // with an invertible witness over the base ring.
    bool small = true;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d && small; ++i) {
        if (count > (std::uint64_t{1} << 16) / q) small = false;
        else count *= q;
    }
    if (small) {
        std::vector<std::uint64_t> idx(d, 0);
        for (;;) {
            std::size_t pos = 0;
            while (pos < d && idx[pos] + 1 == q) idx[pos++] = 0;
            if (pos == d) break;
            ++idx[pos];
            std::vector<RingElement> coef;
            coef.reserve(d);
            for (std::uint64_t v : idx) coef.push_back(element_from_index(k, v));
            if (unit_combination(res, coef))
                return {true, true, lift_witness(L, homs, coef)};
        }
        return {false, true, std::nullopt};
    }

    if (d == 1) {
        if (!det_residue(res[0]).is_zero()) return {true, true, homs[0]};
        return {false, true, std::nullopt};
    }

    // Large coefficient space: decide whether the determinant form vanishes
    // identically by evaluating over an extension with more than 2r points.
    CtxPtr kbig = k;
    std::vector<Mat> resbig = res;
    if (q <= 2 * static_cast<std::uint64_t>(r)) {
        int factor = 1;
        std::uint64_t size = q;
        while (size <= 2 * static_cast<std::uint64_t>(r)) {
            ++factor;
            size *= q;
        }
        Embedding emb = extend_context(k, factor);
        kbig = emb.dst;
        resbig.clear();
        for (const Mat& F : res) {
            Mat G(kbig, r, r);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) G.at(i, j) = emb.map(F.at(i, j));
            resbig.push_back(std::move(G));
        }
    }
    bool base_field = kbig->same_ring(*k);

    if (d == 2) {
        // The form is homogeneous of degree r, so it vanishes identically
        // exactly when it vanishes at (0,1) and at (1,t) for r+1 distinct t.
        std::vector<RingElement> at01{RingElement::zero(kbig), RingElement::one(kbig)};
        if (unit_combination(resbig, at01)) {
            if (base_field) return {true, true, homs[1]};
            return {true, true, std::nullopt};
        }
        for (std::uint64_t t = 0; t <= static_cast<std::uint64_t>(r); ++t) {
            std::vector<RingElement> coef{RingElement::one(kbig), element_from_index(kbig, t)};
            if (unit_combination(resbig, coef)) {
                if (base_field && t < q)
                    return {true, true,
                            lift_witness(L, homs,
                                         {RingElement::one(k), element_from_index(k, t)})};
                return {true, true, std::nullopt};
            }
        }
        return {false, true, std::nullopt};
    }

    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<std::uint64_t> dist(0, ring_size(kbig) - 1);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<RingElement> coef;
        bool all_zero = true;
        for (std::size_t i = 0; i < d; ++i) {
            coef.push_back(element_from_index(kbig, dist(rng)));
            all_zero = all_zero && coef.back().is_zero();
        }
        if (all_zero) continue;
        if (unit_combination(resbig, coef)) {
            if (base_field) {
                std::vector<RingElement> base;
                base.reserve(d);
                for (const RingElement& x : coef) base.push_back(x);
                return {true, true, lift_witness(L, homs, base)};
            }
            return {true, true, std::nullopt};
        }
    }
    return {false, false, std::nullopt};
}

} // namespace ordlat
