#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ordlat/context.hpp"
#include "ordlat/element.hpp"

namespace ordlat {

// Dense matrix over a single truncated Witt ring.  Rows act from the left:
// a module of row vectors x is carried to x * A, so "kernel" always means
// the left kernel and row spans are the modules of interest.
class Mat {
public:
    Mat(CtxPtr ctx, std::size_t rows, std::size_t cols);

    static Mat identity(CtxPtr ctx, std::size_t n);
    static Mat from_rows(CtxPtr ctx, const std::vector<std::vector<RingElement>>& entries);
    static Mat from_ints(CtxPtr ctx, const std::vector<std::vector<std::int64_t>>& entries);

    const CtxPtr& ctx() const { return ctx_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    RingElement& at(std::size_t r, std::size_t c);
    const RingElement& at(std::size_t r, std::size_t c) const;

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat scaled(const RingElement& s) const;
    Mat times_p(int k) const;
    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat transpose() const;
    Mat submatrix(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;
    bool is_zero() const;

    // Entrywise precision change onto a context in the same unramified tower.
    Mat reduce(const CtxPtr& target) const;
    // Entrywise reduction to the residue field.
    Mat residue() const;

    std::string str() const;

private:
    CtxPtr ctx_;
    std::size_t rows_, cols_;
    std::vector<RingElement> data_;
};

Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);

// Canonical row form over the chain ring, a square cols x cols matrix H:
// the row with leftmost unit-scaled pivot p^v in column j sits at row j,
// entries above a pivot are canonical representatives modulo p^v, and for
// every pivot the annihilating multiple p^(N-v) of its row is again in the
// row space.  Two inputs have the same H exactly when their row spans agree,
// including all torsion.  U records the row operations: H = U * A.
struct HowellForm {
    Mat H;
    Mat U;
};

HowellForm howell_form(const Mat& A);

// Nonzero rows of the canonical form: a minimal canonical generating set of
// the row span.
Mat row_span_basis(const Mat& A);

bool same_row_span(const Mat& A, const Mat& B);

// True when every row of B lies in the row span of A.
bool row_span_contains(const Mat& A, const Mat& B);

// Canonical generators of { x : x * A = 0 } at the working precision, with
// no attempt to separate torsion from saturation.  Rows are the nonzero rows
// of a Howell form, so the result is canonical.
Mat null_space(const Mat& A);

// Valuations d_1 <= ... <= d_k, k = min(rows, cols), of the diagonal in a
// Smith decomposition over the chain ring; the value N stands for a zero
// divisor entry.  Computed by exact unimodular reduction.
std::vector<int> smith_invariants(const Mat& A);

// Valuation of the determinant of a square matrix, capped at N (the cap is
// reported when the determinant vanishes at the working precision).
int det_valuation(const Mat& A);

// Inverse of a square matrix with unit determinant; throws NotUnit otherwise.
Mat invert(const Mat& A);

// Solve X * A = B for invertible A.
Mat solve_right_inverse(const Mat& A, const Mat& B);

// Basis of a maximal free direct summand of the row span.  Pivots are
// chosen globally by minimal valuation using row operations only, so the
// pivot valuations coincide with the Smith invariants of the span; the
// unit-pivot rows returned here therefore span a free summand and remain
// linearly independent after reduction modulo p.  (Leftmost-column pivoting
// guarantees neither: a torsion pivot can shadow a free generator whose
// unit coordinate lies in a later column.)
Mat free_row_basis(const Mat& A);

// Certified kernel.  First the Smith invariants of A are inspected: any
// divisor valuation strictly between floor(N/2) and N means the answer could
// change under a precision increase, so PrecisionExhausted is thrown.  When
// the certificate passes, rows of the canonical kernel with pivot valuation
// zero are exact; torsion rows (pivot valuation > 0) are only returned under
// allow_torsion, and otherwise also raise PrecisionExhausted since their
// exponents are precision artifacts.
Mat kernel(const Mat& A, bool allow_torsion = false);

// Certificate check plus a free basis of the saturated part of the kernel,
// via free_row_basis.
Mat saturated_kernel(const Mat& A);

} // namespace ordlat
