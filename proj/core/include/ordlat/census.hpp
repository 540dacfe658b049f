#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ordlat/lattice.hpp"
#include "ordlat/linalg.hpp"

namespace ordlat {

// Canonical basis (square, full rank, Howell form) of the stable sublattice
// spanned by the given generator rows.  Throws NotStable when the span is
// not closed under the action and ValidationError when it is rank deficient.
Mat canonical_sublattice_basis(const Lattice& L, const Mat& generators);

struct SublatticeEntry {
    Mat basis;     // canonical basis, rows in the coordinates of L
    int colength;  // p-valuation of the index [L : L']
};

// All full-rank stable sublattices of index dividing p^max_colength,
// canonically presented and deduplicated, found by walking maximal-step
// inclusions downward from L.  Requires max_colength <= N - 2 so each
// sublattice still carries two trustworthy digits.
std::vector<SublatticeEntry> enumerate_sublattices(const Lattice& L, int max_colength);

struct CensusClass {
    std::size_t representative;        // index into entries
    std::vector<std::size_t> members;  // entry indices, ascending
    std::size_t end_rank;
    std::size_t residue_end_dim;
    bool rigid;
    std::vector<int> self_ext;         // Ext^1 of the class with itself
};

struct CensusReport {
    CtxPtr working;  // uniform precision at which invariants were computed
    std::vector<SublatticeEntry> entries;
    std::vector<CensusClass> classes;

    std::map<int, std::size_t> counts_by_colength() const;
    std::size_t rigid_class_count() const;
};

// Full census: enumerate, recompute every sublattice at the uniform safe
// precision N - max_colength, attach endomorphism / extension invariants,
// and group into isomorphism classes (invariant buckets first, then pairwise
// isomorphism tests inside a bucket).
CensusReport census_rigid(const Lattice& L, int max_colength,
                          std::optional<int> ext_hint = std::nullopt,
                          std::uint64_t seed = 0);

} // namespace ordlat
