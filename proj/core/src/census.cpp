#include "ordlat/census.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>
#include <utility>

#include "ordlat/errors.hpp"

namespace ordlat {

namespace {

std::string basis_key(const Mat& B) { return B.str(); }

int colength_of(const Mat& B) {
    int total = 0;
    for (int v : smith_invariants(B)) total += v;
    return total;
}

// Proper maximal stable subspaces of the residue module given by right
// action matrices over a field.  Working in the dual turns them into
// minimal submodules, which are cyclic and therefore reachable from single
// projective points; the annihilator carries each back.
std::vector<Mat> maximal_stable_subspaces(const CtxPtr& k, std::size_t r,
                                          const std::vector<Mat>& actions) {
    std::vector<Mat> duals;
    duals.reserve(actions.size());
    for (const Mat& a : actions) duals.push_back(a.residue().transpose());

    std::uint64_t q = ring_size(k);
    std::uint64_t points = 1;
    for (std::size_t i = 0; i < r; ++i) {
        if (points > (std::uint64_t{1} << 40) / q)
            throw CapExceeded("residue module too large to enumerate cyclic submodules");
        points *= q;
    }

    std::vector<Mat> candidates;
    std::set<std::string> seen;
    for (std::uint64_t idx = 1; idx < points; ++idx) {
        std::uint64_t rest = idx;
        Mat v(k, 1, r);
        for (std::size_t j = 0; j < r; ++j) {
            v.at(0, j) = element_from_index(k, rest % q);
            rest /= q;
        }
        // One representative per line: leading coordinate normalized to one.
        std::size_t lead = 0;
        while (lead < r && v.at(0, lead).is_zero()) ++lead;
        if (v.at(0, lead) != RingElement::one(k)) continue;

        Mat span = row_span_basis(v);
        for (bool grew = true; grew;) {
            grew = false;
            for (const Mat& D : duals) {
                Mat next = span * D;
                if (!row_span_contains(span, next)) {
                    span = row_span_basis(vstack(span, next));
                    grew = true;
                }
            }
        }
        Mat H = howell_form(span).H;
        if (seen.insert(basis_key(H)).second) candidates.push_back(row_span_basis(H));
    }

    std::vector<Mat> out;
    for (const Mat& c : candidates) {
        bool minimal = true;
        for (const Mat& other : candidates) {
            if (other.rows() < c.rows() && row_span_contains(c, other)) {
                minimal = false;
                break;
            }
        }
        if (!minimal) continue;
        // Annihilator in the original module: x with x . c^T = 0.
        out.push_back(null_space(c.transpose()));
    }
    return out;
}

} // namespace

Mat canonical_sublattice_basis(const Lattice& L, const Mat& generators) {
    if (generators.cols() != L.rank())
        throw ValidationError("generator rows must have the lattice rank");
    Mat H = row_span_basis(generators);
    if (H.rows() != L.rank())
        throw ValidationError("generators do not span a full-rank sublattice");
    for (int v : smith_invariants(H))
        if (v >= L.ctx()->N())
            throw ValidationError("generators do not span a full-rank sublattice");
    for (std::size_t b = 0; b < L.order()->dim(); ++b)
        if (!row_span_contains(H, H * L.action(b)))
            throw NotStable("the spanned sublattice is not stable under the action");
    return H;
}

std::vector<SublatticeEntry> enumerate_sublattices(const Lattice& L, int max_colength) {
    const CtxPtr& ctx = L.ctx();
    if (max_colength < 0) throw ValidationError("colength bound must be nonnegative");
    if (max_colength > ctx->N() - 2)
        throw PrecisionExhausted("colength bound " + std::to_string(max_colength) +
                                 " needs working precision at least " +
                                 std::to_string(max_colength + 2));
    CtxPtr k = ctx->residue();
    std::vector<SublatticeEntry> entries;
    std::set<std::string> visited;
    std::deque<std::size_t> work;

    Mat root = Mat::identity(ctx, L.rank());
    visited.insert(basis_key(root));
    entries.push_back({std::move(root), 0});
    work.push_back(0);

    while (!work.empty()) {
        std::size_t cur = work.front();
        work.pop_front();
        Mat B = entries[cur].basis;              // copy: entries may reallocate
        int len = entries[cur].colength;
        if (len >= max_colength) continue;

        Lattice sub = sublattice_in_basis(L, B, k);
        std::vector<Mat> acts;
        acts.reserve(L.order()->dim());
        for (std::size_t b = 0; b < L.order()->dim(); ++b) acts.push_back(sub.action(b));
        for (const Mat& W : maximal_stable_subspaces(k, L.rank(), acts)) {
            // Child generators: lifts of the subspace rows rewritten in the
            // ambient coordinates, together with p times the current basis.
            Mat lifts(ctx, W.rows(), L.rank());
            for (std::size_t i = 0; i < W.rows(); ++i)
                for (std::size_t j = 0; j < L.rank(); ++j)
                    lifts.at(i, j) = W.at(i, j).to_precision(ctx);
            Mat child = row_span_basis(vstack(lifts * B, B.times_p(1)));
            int child_len = colength_of(child);
            if (child_len > max_colength) continue;
            if (!visited.insert(basis_key(child)).second) continue;
            entries.push_back({std::move(child), child_len});
            work.push_back(entries.size() - 1);
        }
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const SublatticeEntry& a, const SublatticeEntry& b) {
                         return a.colength < b.colength;
                     });
    return entries;
}

std::map<int, std::size_t> CensusReport::counts_by_colength() const {
    std::map<int, std::size_t> out;
    for (const auto& e : entries) ++out[e.colength];
    return out;
}

std::size_t CensusReport::rigid_class_count() const {
    std::size_t n = 0;
    for (const auto& c : classes)
        if (c.rigid) ++n;
    return n;
}

CensusReport census_rigid(const Lattice& L, int max_colength,
                          std::optional<int> ext_hint, std::uint64_t seed) {
    const CtxPtr& ctx = L.ctx();
    if (ctx->N() - max_colength < 2)
        throw PrecisionExhausted("census at colength " + std::to_string(max_colength) +
                                 " needs working precision at least " +
                                 std::to_string(max_colength + 2));
    CensusReport report;
    report.working = ctx->with_precision(ctx->N() - max_colength);
    report.entries = enumerate_sublattices(L, max_colength);

    std::vector<Lattice> reduced;
    reduced.reserve(report.entries.size());
    for (const auto& e : report.entries)
        reduced.push_back(sublattice_in_basis(L, e.basis, report.working));

    for (std::size_t i = 0; i < reduced.size(); ++i) {
        RigidityReport rig = end_reduction(reduced[i]);
        std::vector<int> ext = ext1_invariants(reduced[i], reduced[i], ext_hint);
        bool placed = false;
        for (auto& cls : report.classes) {
            if (cls.end_rank != rig.end_rank || cls.residue_end_dim != rig.residue_end_dim ||
                cls.self_ext != ext)
                continue;
            if (is_isomorphic(reduced[cls.representative], reduced[i], seed).isomorphic) {
                cls.members.push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed)
            report.classes.push_back(
                {i, {i}, rig.end_rank, rig.residue_end_dim, rig.surjective, ext});
    }
    return report;
}

} // namespace ordlat
