#pragma once

#include <string>

#include "ordlat/census.hpp"
#include "ordlat/context.hpp"
#include "ordlat/element.hpp"
#include "ordlat/genval.hpp"
#include "ordlat/group.hpp"
#include "ordlat/lattice.hpp"
#include "ordlat/linalg.hpp"
#include "ordlat/order.hpp"
#include "ordlat/witt.hpp"

namespace ordlat {

// JSON text encodings.  Every encoder emits a canonical document (stable key
// order, two-space indentation, trailing newline) so identical inputs give
// byte-identical files.  Decoders throw ValidationError on malformed text;
// element coefficients are canonicalised into [0, p^N), while Witt digit
// entries must already lie in [0, p).
//
// Formats:
//   context     {"p", "m", "N", "modulus"}        modulus optional on input
//   element     [c_0, ..., c_{m-1}]
//   digits      [[...m ints...] x l]
//   matrix      {"rows", "cols", "entries": row-major element list}
//   order       {"context", "dimension", "labels", "structure_constants",
//                "identity"}; structure_constants[i][j] is the dense
//                coordinate vector of b_i * b_j
//   lattice     {"order" inline or "order_ref" path, "rank",
//                "action": {basis label: matrix}}
//   polynomial  {"n", "terms": [{"exponents", "coefficient"}]}
//   point       {"n", "l", "digits": one digit list per variable}

std::string encode_context(const CtxPtr& ctx);
CtxPtr decode_context(const std::string& text);

std::string encode_element(const RingElement& x);
RingElement decode_element(const CtxPtr& ctx, const std::string& text);

std::string encode_digits(const WittDigits& d);
WittDigits decode_digits(const CtxPtr& ctx, const std::string& text);

std::string encode_matrix(const Mat& a);
Mat decode_matrix(const CtxPtr& ctx, const std::string& text);

// Orders and lattices are fully validated on the way in (associativity,
// identity, multiplicativity), so a loaded object is as trustworthy as a
// constructed one.
std::string encode_order(const OrderPtr& ord);
OrderPtr decode_order(const std::string& text);

std::string encode_lattice(const Lattice& L);
Lattice decode_lattice(const std::string& text);

// Decode a lattice against an explicitly supplied order.  An inline "order"
// in the text, when present, must have the same structure; an "order_ref" is
// not followed in this mode.  Action matrices always come from the text.
Lattice decode_lattice_over(const OrderPtr& ord, const std::string& text);

std::string encode_polynomial(const PolyO& f);
PolyO decode_polynomial(const CtxPtr& ctx, const std::string& text);

std::string encode_point(const WittPoint& x);
WittPoint decode_point(const CtxPtr& ctx, const std::string& text);

// Census results: run header (context, bound, precision), per-colength
// counts, and the isomorphism classes with representative bases, invariants
// and multiplicities.
std::string encode_census(const CensusReport& report, int max_colength);

// File helpers.  load_lattice resolves an "order_ref" relative to the
// directory of the lattice file itself.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

OrderPtr load_order(const std::string& path);
Lattice load_lattice(const std::string& path);
PolyO load_polynomial(const CtxPtr& ctx, const std::string& path);
WittPoint load_point(const CtxPtr& ctx, const std::string& path);

// FNV-1a 64-bit content digest as 16 hex digits; used to pin input files
// inside run reports.
std::string content_digest(const std::string& text);

} // namespace ordlat
