#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ordlat/lattice.hpp"
#include "ordlat/order.hpp"

namespace ordlat {

// A permutation of {0, ..., degree-1} stored as the image list.
using Perm = std::vector<std::size_t>;

// Parse cycle notation with 1-based points, e.g. "(1 2)(3 4)"; cycles are
// applied left to right.  The degree is the largest point mentioned, or
// `min_degree` if that is larger.  "()" and the empty string give the
// identity.
Perm parse_cycles(const std::string& text, std::size_t min_degree = 1);

// A comma-separated list of permutations, all padded to a common degree.
std::vector<Perm> parse_generators(const std::string& text);

// Cycle notation for a permutation (1-based points, "()" for the identity).
std::string cycle_string(const Perm& g);

// A finite permutation group, fully enumerated.  elements[0] is always the
// identity; the multiplication convention is "apply left factor first":
// table[i][j] indexes the permutation taking a point through elements[i] and
// then elements[j].
struct GroupData {
    std::size_t degree = 0;
    std::vector<Perm> generators;
    std::vector<Perm> elements;
    std::vector<std::vector<std::size_t>> table;

    std::size_t order() const { return elements.size(); }
    std::size_t mul(std::size_t i, std::size_t j) const { return table[i][j]; }
    std::size_t inverse(std::size_t i) const;
    // Index of a permutation, or order() when absent.
    std::size_t index_of(const Perm& g) const;
};

// Enumerate the group generated by the permutations; refuses orders beyond
// the cap with GroupTooLarge.
GroupData make_group(const std::vector<Perm>& generators, std::size_t cap = 64);

// Indices of the subgroup generated by the given permutations, sorted.
// Throws NotSubgroup when a generator is not an element of G.
std::vector<std::size_t> subgroup_elements(const GroupData& G, const std::vector<Perm>& gens);

// True when the sorted index list is a subgroup.
bool is_subgroup(const GroupData& G, const std::vector<std::size_t>& H);

// Every subgroup of G as a sorted index list, ordered by size then
// lexicographically.  Intended for catalog sweeps; refuses |G| > 16.
std::vector<std::vector<std::size_t>> all_subgroups(const GroupData& G);

// The partition of G into double cosets H g H, each a sorted index list in
// first-discovery order.
struct DoubleCosetPartition {
    std::vector<std::vector<std::size_t>> cosets;

    std::size_t count() const { return cosets.size(); }
};

DoubleCosetPartition double_cosets(const GroupData& G, const std::vector<std::size_t>& H);

// The group algebra as an order: basis indexed by group elements, labelled
// with their cycle strings.
OrderPtr group_order(const GroupData& G, const CtxPtr& ctx);

// The permutation lattice on right cosets Hg with the right-translation
// action; rank is the index of H.
Lattice permutation_lattice(const GroupData& G, const std::vector<std::size_t>& H,
                            const CtxPtr& ctx);

// The enveloping order of an order: basis pairs (i, j) standing for
// op(b_i) (x) b_j, flattened as i * dim + j, with the product
// (i,j)(k,l) = (b_k b_i, b_j b_l).  The base order becomes a right module
// over it through x * (a (x) b) = a x b; that module is the diagonal
// lattice.  Refuses squared dimensions beyond the cap with CapExceeded.
struct EnvelopingOrder {
    OrderPtr env;
    Lattice diagonal;
};

EnvelopingOrder enveloping_order(const OrderPtr& lam, std::size_t dim_cap = 4096);

// First Hochschild cohomology vanishing probe: rigidity of the diagonal
// lattice over the enveloping order.
bool hochschild1_vanishes(const OrderPtr& lam);

} // namespace ordlat
