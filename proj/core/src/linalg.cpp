#include "ordlat/linalg.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include "ordlat/errors.hpp"

namespace ordlat {

Mat::Mat(CtxPtr ctx, std::size_t rows, std::size_t cols)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols),
      data_(rows * cols, RingElement::zero(ctx_)) {}

Mat Mat::identity(CtxPtr ctx, std::size_t n) {
    Mat out(std::move(ctx), n, n);
    for (std::size_t i = 0; i < n; ++i) out.at(i, i) = RingElement::one(out.ctx_);
    return out;
}

Mat Mat::from_rows(CtxPtr ctx, const std::vector<std::vector<RingElement>>& entries) {
    std::size_t r = entries.size();
    std::size_t c = r == 0 ? 0 : entries.front().size();
    Mat out(std::move(ctx), r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (entries[i].size() != c) throw ValidationError("matrix rows have unequal lengths");
        for (std::size_t j = 0; j < c; ++j) {
            if (!entries[i][j].valid() || !out.ctx_->same_ring(*entries[i][j].ctx()))
                throw ValidationError("matrix entry from a different ring");
            out.at(i, j) = entries[i][j];
        }
    }
    return out;
}

Mat Mat::from_ints(CtxPtr ctx, const std::vector<std::vector<std::int64_t>>& entries) {
    std::size_t r = entries.size();
    std::size_t c = r == 0 ? 0 : entries.front().size();
    Mat out(std::move(ctx), r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (entries[i].size() != c) throw ValidationError("matrix rows have unequal lengths");
        for (std::size_t j = 0; j < c; ++j)
            out.at(i, j) = RingElement::from_int(out.ctx_, entries[i][j]);
    }
    return out;
}

RingElement& Mat::at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
const RingElement& Mat::at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

namespace {

void require_same_shape(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ValidationError("matrix shapes differ");
    if (!a.ctx()->same_ring(*b.ctx())) throw ValidationError("matrix rings differ");
}

} // namespace

Mat Mat::operator+(const Mat& o) const {
    require_same_shape(*this, o);
    Mat out(ctx_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + o.data_[i];
    return out;
}

Mat Mat::operator-(const Mat& o) const {
    require_same_shape(*this, o);
    Mat out(ctx_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - o.data_[i];
    return out;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw ValidationError("matrix product shapes incompatible");
    if (!ctx_->same_ring(*o.ctx_)) throw ValidationError("matrix rings differ");
    Mat out(ctx_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const RingElement& a = at(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) out.at(i, j) += a * o.at(k, j);
        }
    return out;
}

Mat Mat::scaled(const RingElement& s) const {
    Mat out(ctx_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * s;
    return out;
}

Mat Mat::times_p(int k) const {
    Mat out(ctx_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i].times_p(k);
    return out;
}

bool Mat::operator==(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || !ctx_->same_ring(*o.ctx_)) return false;
    return data_ == o.data_;
}

Mat Mat::transpose() const {
    Mat out(ctx_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

Mat Mat::submatrix(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
    if (r1 < r0 || c1 < c0 || r1 > rows_ || c1 > cols_)
        throw ValidationError("submatrix range out of bounds");
    Mat out(ctx_, r1 - r0, c1 - c0);
    for (std::size_t i = r0; i < r1; ++i)
        for (std::size_t j = c0; j < c1; ++j) out.at(i - r0, j - c0) = at(i, j);
    return out;
}

bool Mat::is_zero() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const RingElement& x) { return x.is_zero(); });
}

Mat Mat::reduce(const CtxPtr& target) const {
    Mat out(target, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i].to_precision(target);
    return out;
}

Mat Mat::residue() const { return reduce(ctx_->residue()); }

std::string Mat::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) os << "; ";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << ", ";
            os << at(i, j).str();
        }
    }
    os << "]";
    return os.str();
}

Mat hstack(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || !a.ctx()->same_ring(*b.ctx()))
        throw ValidationError("hstack shapes incompatible");
    Mat out(a.ctx(), a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, a.cols() + j) = b.at(i, j);
    }
    return out;
}

Mat vstack(const Mat& a, const Mat& b) {
    if (a.cols() != b.cols() || !a.ctx()->same_ring(*b.ctx()))
        throw ValidationError("vstack shapes incompatible");
    Mat out(a.ctx(), a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out.at(a.rows() + i, j) = b.at(i, j);
    return out;
}

namespace {

// One work item of the elimination loop: a candidate row together with the
// record of how it was obtained from the input rows (w = u * A throughout).
struct WorkRow {
    std::vector<RingElement> w;
    std::vector<RingElement> u;
};

std::size_t leading_col(const std::vector<RingElement>& w) {
    for (std::size_t j = 0; j < w.size(); ++j)
        if (!w[j].is_zero()) return j;
    return w.size();
}

void scale_row(std::vector<RingElement>& v, const RingElement& c) {
    for (auto& x : v) x *= c;
}

void submul_row(std::vector<RingElement>& dst, const RingElement& c,
                const std::vector<RingElement>& src) {
    for (std::size_t j = 0; j < dst.size(); ++j)
        if (!src[j].is_zero()) dst[j] -= c * src[j];
}

std::vector<RingElement> row_times_p(const std::vector<RingElement>& v, int k) {
    std::vector<RingElement> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.times_p(k));
    return out;
}

// Worklist elimination shared by the canonical form and the kernel.  Pivot
// rows are kept unit-normalized (leading entry exactly p^v), eliminations
// divide exactly by the pivot, and every install of a pivot with positive
// valuation enqueues its annihilating multiple so the row space stays closed
// under the extra combinations a chain ring demands.  Rows that collapse to
// zero are retained through their transform part: they witness relations
// x * A = 0.
class Eliminator {
public:
    Eliminator(CtxPtr ctx, int precision) : ctx_(std::move(ctx)), N_(precision) {}

    void seed(WorkRow r) { queue_.push_back(std::move(r)); }

    void run() {
        while (!queue_.empty()) {
            WorkRow r = std::move(queue_.back());
            queue_.pop_back();
            settle(std::move(r));
        }
    }

    const std::map<std::size_t, WorkRow>& pivots() const { return pivots_; }
    const std::vector<WorkRow>& relations() const { return relations_; }

private:
    void settle(WorkRow r) {
        for (;;) {
            std::size_t j = leading_col(r.w);
            if (j == r.w.size()) {
                relations_.push_back(std::move(r));
                return;
            }
            int v = r.w[j].valuation();
            auto it = pivots_.find(j);
            if (it == pivots_.end()) {
                normalize(r, j, v);
                enqueue_annihilator(r, v);
                pivots_.emplace(j, std::move(r));
                return;
            }
            int hv = it->second.w[j].valuation();
            if (v < hv) {
                normalize(r, j, v);
                enqueue_annihilator(r, v);
                std::swap(r, it->second);
            }
            // The leading entry of r is now divisible by the pivot p^v'.
            const WorkRow& h = it->second;
            RingElement c = r.w[j].exact_div_p(h.w[j].valuation());
            submul_row(r.w, c, h.w);
            submul_row(r.u, c, h.u);
        }
    }

    void normalize(WorkRow& r, std::size_t j, int v) {
        RingElement inv = r.w[j].exact_div_p(v).inverse();
        scale_row(r.w, inv);
        scale_row(r.u, inv);
    }

    void enqueue_annihilator(const WorkRow& r, int v) {
        if (v == 0) return;
        queue_.push_back(WorkRow{row_times_p(r.w, N_ - v), row_times_p(r.u, N_ - v)});
    }

    CtxPtr ctx_;
    int N_;
    std::vector<WorkRow> queue_;
    std::map<std::size_t, WorkRow> pivots_;
    std::vector<WorkRow> relations_;
};

Eliminator eliminate_rows(const Mat& A) {
    Eliminator e(A.ctx(), A.ctx()->N());
    for (std::size_t i = A.rows(); i-- > 0;) {
        WorkRow r;
        r.w.reserve(A.cols());
        for (std::size_t j = 0; j < A.cols(); ++j) r.w.push_back(A.at(i, j));
        r.u.assign(A.rows(), RingElement::zero(A.ctx()));
        r.u[i] = RingElement::one(A.ctx());
        e.seed(std::move(r));
    }
    e.run();
    return e;
}

} // namespace

HowellForm howell_form(const Mat& A) {
    Eliminator e = eliminate_rows(A);
    std::size_t c = A.cols();
    HowellForm out{Mat(A.ctx(), c, c), Mat(A.ctx(), c, A.rows())};
    for (const auto& [j, row] : e.pivots()) {
        for (std::size_t k = 0; k < c; ++k) out.H.at(j, k) = row.w[k];
        for (std::size_t k = 0; k < A.rows(); ++k) out.U.at(j, k) = row.u[k];
    }
    // Reduce entries above each pivot to canonical representatives.  Walking
    // pivot columns left to right keeps already-reduced columns untouched,
    // because a pivot row vanishes left of its pivot.
    for (const auto& [j, row] : e.pivots()) {
        (void)row;
        int v = out.H.at(j, j).valuation();
        for (const auto& [i, above] : e.pivots()) {
            (void)above;
            if (i >= j) break;
            RingElement q = out.H.at(i, j).div_floor_p(v);
            if (q.is_zero()) continue;
            for (std::size_t k = j; k < c; ++k) out.H.at(i, k) -= q * out.H.at(j, k);
            for (std::size_t k = 0; k < A.rows(); ++k) out.U.at(i, k) -= q * out.U.at(j, k);
        }
    }
    return out;
}

Mat row_span_basis(const Mat& A) {
    Mat H = howell_form(A).H;
    std::vector<std::vector<RingElement>> rows;
    for (std::size_t i = 0; i < H.rows(); ++i) {
        std::vector<RingElement> row;
        bool nonzero = false;
        for (std::size_t j = 0; j < H.cols(); ++j) {
            row.push_back(H.at(i, j));
            nonzero = nonzero || !H.at(i, j).is_zero();
        }
        if (nonzero) rows.push_back(std::move(row));
    }
    Mat out(A.ctx(), rows.size(), A.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) out.at(i, j) = rows[i][j];
    return out;
}

bool same_row_span(const Mat& A, const Mat& B) {
    if (A.cols() != B.cols() || !A.ctx()->same_ring(*B.ctx())) return false;
    return howell_form(A).H == howell_form(B).H;
}

bool row_span_contains(const Mat& A, const Mat& B) {
    if (A.cols() != B.cols() || !A.ctx()->same_ring(*B.ctx()))
        throw ValidationError("row span comparison shapes incompatible");
    Mat H = howell_form(A).H;
    // Greedy reduction against the canonical form decides membership: the
    // closure property guarantees a member's leading column always meets a
    // pivot that divides it.
    for (std::size_t i = 0; i < B.rows(); ++i) {
        std::vector<RingElement> w;
        for (std::size_t j = 0; j < B.cols(); ++j) w.push_back(B.at(i, j));
        for (;;) {
            std::size_t j = leading_col(w);
            if (j == w.size()) break;
            if (H.at(j, j).is_zero()) return false;
            int v = H.at(j, j).valuation();
            auto q = w[j].try_exact_div_p(v);
            if (!q) return false;
            for (std::size_t k = j; k < w.size(); ++k)
                if (!H.at(j, k).is_zero()) w[k] -= *q * H.at(j, k);
        }
    }
    return true;
}

Mat null_space(const Mat& A) {
    Eliminator e = eliminate_rows(A);
    Mat gens(A.ctx(), e.relations().size(), A.rows());
    for (std::size_t i = 0; i < e.relations().size(); ++i)
        for (std::size_t k = 0; k < A.rows(); ++k) gens.at(i, k) = e.relations()[i].u[k];
    return row_span_basis(gens);
}

std::vector<int> smith_invariants(const Mat& A) {
    int N = A.ctx()->N();
    std::size_t r = A.rows(), c = A.cols();
    std::size_t k = std::min(r, c);
    std::vector<std::vector<RingElement>> a(r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) a[i].push_back(A.at(i, j));
    std::vector<int> out;
    for (std::size_t t = 0; t < k; ++t) {
        // Locate a minimal-valuation entry of the trailing block; it divides
        // every remaining entry, so one round of exact eliminations clears
        // its row and column.
        int best = N;
        std::size_t bi = t, bj = t;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < c; ++j) {
                int v = a[i][j].valuation();
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (best == N) {
            for (std::size_t rest = t; rest < k; ++rest) out.push_back(N);
            return out;
        }
        std::swap(a[t], a[bi]);
        for (std::size_t i = 0; i < r; ++i) std::swap(a[i][t], a[i][bj]);
        RingElement inv = a[t][t].exact_div_p(best).inverse();
        for (std::size_t j = t; j < c; ++j) a[t][j] *= inv;
        for (std::size_t i = t + 1; i < r; ++i) {
            if (a[i][t].is_zero()) continue;
            RingElement q = a[i][t].exact_div_p(best);
            for (std::size_t j = t; j < c; ++j) a[i][j] -= q * a[t][j];
        }
        for (std::size_t j = t + 1; j < c; ++j) {
            if (a[t][j].is_zero()) continue;
            RingElement q = a[t][j].exact_div_p(best);
            for (std::size_t i = t; i < r; ++i) a[i][j] -= q * a[i][t];
        }
        out.push_back(best);
    }
    return out;
}

int det_valuation(const Mat& A) {
    if (A.rows() != A.cols()) throw ValidationError("determinant of a non-square matrix");
    int N = A.ctx()->N();
    int total = 0;
    for (int v : smith_invariants(A)) {
        total += v;
        if (total >= N) return N;
    }
    return total;
}

Mat invert(const Mat& A) {
    if (A.rows() != A.cols()) throw ValidationError("inverse of a non-square matrix");
    HowellForm hf = howell_form(A);
    if (hf.H != Mat::identity(A.ctx(), A.cols()))
        throw NotUnit("matrix is not invertible over the chain ring");
    return hf.U;
}

Mat solve_right_inverse(const Mat& A, const Mat& B) {
    return B * invert(A);
}

namespace {

void certify_kernel_precision(const Mat& A) {
    int N = A.ctx()->N();
    for (int v : smith_invariants(A)) {
        if (v > N / 2 && v < N)
            throw PrecisionExhausted(
                "elementary divisor p^" + std::to_string(v) + " at precision " +
                std::to_string(N) + " cannot be certified; raise the working precision");
    }
}

} // namespace

Mat kernel(const Mat& A, bool allow_torsion) {
    certify_kernel_precision(A);
    Mat K = null_space(A);
    if (!allow_torsion) {
        for (std::size_t i = 0; i < K.rows(); ++i) {
            std::size_t j = 0;
            while (j < K.cols() && K.at(i, j).is_zero()) ++j;
            if (j < K.cols() && K.at(i, j).valuation() > 0)
                throw PrecisionExhausted(
                    "kernel contains torsion generators whose exponents depend on the "
                    "working precision; pass allow_torsion to receive them");
        }
    }
    return K;
}

Mat free_row_basis(const Mat& A) {
    int N = A.ctx()->N();
    std::size_t r = A.rows(), c = A.cols();
    std::vector<std::vector<RingElement>> rows(r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) rows[i].push_back(A.at(i, j));
    std::vector<char> pivoted(r, 0);
    std::vector<std::size_t> unit_rows;

    for (;;) {
        int best = N;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < r; ++i) {
            if (pivoted[i]) continue;
            for (std::size_t j = 0; j < c; ++j) {
                int v = rows[i][j].valuation();
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (best == N) break;
        RingElement inv = rows[bi][bj].exact_div_p(best).inverse();
        for (std::size_t j = 0; j < c; ++j) rows[bi][j] *= inv;
        for (std::size_t i = 0; i < r; ++i) {
            if (pivoted[i] || i == bi || rows[i][bj].is_zero()) continue;
            RingElement q = rows[i][bj].exact_div_p(best);
            for (std::size_t j = 0; j < c; ++j) rows[i][j] -= q * rows[bi][j];
        }
        pivoted[bi] = 1;
        if (best == 0) unit_rows.push_back(bi);
    }

    Mat out(A.ctx(), unit_rows.size(), c);
    for (std::size_t i = 0; i < unit_rows.size(); ++i)
        for (std::size_t j = 0; j < c; ++j) out.at(i, j) = rows[unit_rows[i]][j];
    return out;
}

Mat saturated_kernel(const Mat& A) {
    certify_kernel_precision(A);
    return free_row_basis(null_space(A));
}

} // namespace ordlat
