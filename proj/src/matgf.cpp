#include "sqcode/matgf.hpp"

#include <algorithm>

namespace sqcode {

VectorGF VectorGF::add(const VectorGF& other) const {
    require_same_field(field_, other.field_);
    if (size() != other.size()) throw ParamError("vector length mismatch");
    VectorGF out(field_, size());
    for (size_t i = 0; i < size(); ++i) out[i] = field_->add(v_[i], other[i]);
    return out;
}

VectorGF VectorGF::sub(const VectorGF& other) const {
    require_same_field(field_, other.field_);
    if (size() != other.size()) throw ParamError("vector length mismatch");
    VectorGF out(field_, size());
    for (size_t i = 0; i < size(); ++i) out[i] = field_->sub(v_[i], other[i]);
    return out;
}

VectorGF VectorGF::scale(Fe c) const {
    VectorGF out(field_, size());
    for (size_t i = 0; i < size(); ++i) out[i] = field_->mul(v_[i], c);
    return out;
}

bool VectorGF::is_zero() const {
    return std::all_of(v_.begin(), v_.end(), [](Fe x) { return x.code == 0; });
}

size_t VectorGF::hamming_weight() const {
    size_t w = 0;
    for (Fe x : v_)
        if (x.code != 0) ++w;
    return w;
}

size_t VectorGF::hamming_distance(const VectorGF& other) const {
    if (size() != other.size()) throw ParamError("vector length mismatch");
    size_t d = 0;
    for (size_t i = 0; i < size(); ++i)
        if (v_[i] != other[i]) ++d;
    return d;
}

VectorGF random_vector(const FieldPtr& f, size_t n, Rng& rng) {
    VectorGF out(f, n);
    for (size_t i = 0; i < n; ++i) out[i] = f->sample(rng);
    return out;
}

MatrixGF MatrixGF::identity(const FieldPtr& f, size_t n) {
    MatrixGF m(f, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = f->one();
    return m;
}

MatrixGF MatrixGF::from_rows(const FieldPtr& f, const std::vector<VectorGF>& rows) {
    if (rows.empty()) throw ParamError("from_rows: need at least one row");
    MatrixGF m(f, rows.size(), rows[0].size());
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols()) throw ParamError("from_rows: ragged rows");
        for (size_t c = 0; c < m.cols(); ++c) m.at(r, c) = rows[r][c];
    }
    return m;
}

VectorGF MatrixGF::row(size_t r) const {
    VectorGF v(field_, cols_);
    for (size_t c = 0; c < cols_; ++c) v[c] = at(r, c);
    return v;
}

MatrixGF MatrixGF::mul(const MatrixGF& other) const {
    require_same_field(field_, other.field_);
    if (cols_ != other.rows_) throw ParamError("matrix product dimension mismatch");
    MatrixGF out(field_, rows_, other.cols_);
    const Field& f = *field_;
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t t = 0; t < cols_; ++t) {
            const Fe c = at(i, t);
            if (c.code == 0) continue;
            for (size_t j = 0; j < other.cols_; ++j) {
                out.at(i, j) = f.add(out.at(i, j), f.mul(c, other.at(t, j)));
            }
        }
    }
    return out;
}

MatrixGF MatrixGF::add(const MatrixGF& other) const {
    require_same_field(field_, other.field_);
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw ParamError("matrix sum dimension mismatch");
    MatrixGF out(field_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_->add(a_[i], other.a_[i]);
    return out;
}

MatrixGF MatrixGF::sub(const MatrixGF& other) const {
    require_same_field(field_, other.field_);
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw ParamError("matrix difference dimension mismatch");
    MatrixGF out(field_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_->sub(a_[i], other.a_[i]);
    return out;
}

MatrixGF MatrixGF::scale(Fe c) const {
    MatrixGF out(field_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_->mul(a_[i], c);
    return out;
}

MatrixGF MatrixGF::transpose() const {
    MatrixGF out(field_, cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
    return out;
}

MatrixGF MatrixGF::hstack(const MatrixGF& right) const {
    require_same_field(field_, right.field_);
    if (rows_ != right.rows_) throw ParamError("hstack row mismatch");
    MatrixGF out(field_, rows_, cols_ + right.cols_);
    for (size_t r = 0; r < rows_; ++r) {
        for (size_t c = 0; c < cols_; ++c) out.at(r, c) = at(r, c);
        for (size_t c = 0; c < right.cols_; ++c) out.at(r, cols_ + c) = right.at(r, c);
    }
    return out;
}

MatrixGF MatrixGF::vstack(const MatrixGF& below) const {
    require_same_field(field_, below.field_);
    if (cols_ != below.cols_) throw ParamError("vstack column mismatch");
    MatrixGF out(field_, rows_ + below.rows_, cols_);
    std::copy(a_.begin(), a_.end(), out.a_.begin());
    std::copy(below.a_.begin(), below.a_.end(),
              out.a_.begin() + static_cast<std::ptrdiff_t>(a_.size()));
    return out;
}

MatrixGF MatrixGF::row_select(const std::vector<size_t>& idx) const {
    MatrixGF out(field_, idx.size(), cols_);
    for (size_t r = 0; r < idx.size(); ++r) {
        if (idx[r] >= rows_) throw ParamError("row_select index out of range");
        for (size_t c = 0; c < cols_; ++c) out.at(r, c) = at(idx[r], c);
    }
    return out;
}

MatrixGF MatrixGF::col_select(const std::vector<size_t>& idx) const {
    MatrixGF out(field_, rows_, idx.size());
    for (size_t c = 0; c < idx.size(); ++c)
        if (idx[c] >= cols_) throw ParamError("col_select index out of range");
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < idx.size(); ++c) out.at(r, c) = at(r, idx[c]);
    return out;
}

VectorGF MatrixGF::apply_left(const VectorGF& v) const {
    require_same_field(field_, v.field());
    if (v.size() != rows_) throw ParamError("apply_left length mismatch");
    VectorGF out(field_, cols_);
    const Field& f = *field_;
    for (size_t r = 0; r < rows_; ++r) {
        const Fe c = v[r];
        if (c.code == 0) continue;
        for (size_t j = 0; j < cols_; ++j) out[j] = f.add(out[j], f.mul(c, at(r, j)));
    }
    return out;
}

VectorGF MatrixGF::apply_right(const VectorGF& v) const {
    require_same_field(field_, v.field());
    if (v.size() != cols_) throw ParamError("apply_right length mismatch");
    VectorGF out(field_, rows_);
    const Field& f = *field_;
    for (size_t r = 0; r < rows_; ++r) {
        Fe acc{0};
        for (size_t c = 0; c < cols_; ++c) acc = f.add(acc, f.mul(at(r, c), v[c]));
        out[r] = acc;
    }
    return out;
}

MatrixGF outer_product(const VectorGF& b, const VectorGF& a) {
    require_same_field(b.field(), a.field());
    MatrixGF out(b.field(), b.size(), a.size());
    const Field& f = *b.field();
    for (size_t i = 0; i < b.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) out.at(i, j) = f.mul(b[i], a[j]);
    return out;
}

namespace {

// In-place Gauss-Jordan; stops once rank exceeds cap. Returns pivot columns.
std::vector<size_t> eliminate(MatrixGF& m, size_t cap) {
    const Field& f = *m.field();
    const size_t rows = m.rows(), cols = m.cols();
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t sel = row;
        while (sel < rows && m.at(sel, col).code == 0) ++sel;
        if (sel == rows) continue;
        if (sel != row) {
            for (size_t c = col; c < cols; ++c) std::swap(m.at(row, c), m.at(sel, c));
        }
        if (m.at(row, col).code != 1) {
            const Fe inv = f.inv(m.at(row, col));
            for (size_t c = col; c < cols; ++c) m.at(row, c) = f.mul(m.at(row, c), inv);
        }
        for (size_t r = 0; r < rows; ++r) {
            if (r == row) continue;
            const Fe factor = m.at(r, col);
            if (factor.code == 0) continue;
            for (size_t c = col; c < cols; ++c)
                m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(row, c)));
        }
        pivots.push_back(col);
        ++row;
        if (row > cap) break;
    }
    return pivots;
}

}  // namespace

RrefResult rref(const MatrixGF& m) {
    MatrixGF r = m;
    auto pivots = eliminate(r, m.rows());
    return RrefResult{std::move(r), pivots.size(), std::move(pivots)};
}

size_t rank(const MatrixGF& m) {
    MatrixGF r = m;
    return eliminate(r, m.rows()).size();
}

size_t rank_bounded(const MatrixGF& m, size_t cap) {
    MatrixGF r = m;
    return eliminate(r, cap).size();
}

MatrixGF nullspace(const MatrixGF& m) {
    const auto [r, rk, pivots] = rref(m);
    const size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (size_t c : pivots) is_pivot[c] = true;
    const size_t dim = n - rk;
    MatrixGF basis(m.field(), dim, n);
    const Field& f = *m.field();
    size_t bi = 0;
    for (size_t free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col]) continue;
        basis.at(bi, free_col) = f.one();
        for (size_t pr = 0; pr < rk; ++pr)
            basis.at(bi, pivots[pr]) = f.neg(r.at(pr, free_col));
        ++bi;
    }
    if (dim == 0) return basis;
    return rref(basis).r;  // canonicalize
}

std::optional<VectorGF> solve(const MatrixGF& a, const VectorGF& b) {
    require_same_field(a.field(), b.field());
    if (b.size() != a.rows()) throw ParamError("solve: rhs length mismatch");
    MatrixGF aug(a.field(), a.rows(), a.cols() + 1);
    for (size_t r = 0; r < a.rows(); ++r) {
        for (size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols()) = b[r];
    }
    const auto [r, rk, pivots] = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    VectorGF x(a.field(), a.cols());
    for (size_t pr = 0; pr < rk; ++pr) x[pivots[pr]] = r.at(pr, a.cols());
    return x;
}

std::optional<MatrixGF> inverse(const MatrixGF& m) {
    if (m.rows() != m.cols()) throw ParamError("inverse: matrix must be square");
    const size_t n = m.rows();
    MatrixGF aug = m.hstack(MatrixGF::identity(m.field(), n));
    const auto [r, rk, pivots] = rref(aug);
    (void)pivots;
    if (rk < n) return std::nullopt;
    for (size_t i = 0; i < n; ++i)
        if (pivots[i] != i) return std::nullopt;
    std::vector<size_t> right(n);
    for (size_t i = 0; i < n; ++i) right[i] = n + i;
    return r.col_select(right);
}

MatrixGF random_matrix(const FieldPtr& f, size_t rows, size_t cols, Rng& rng) {
    MatrixGF m(f, rows, cols);
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) m.at(r, c) = f->sample(rng);
    return m;
}

MatrixGF random_invertible(const FieldPtr& f, size_t k, Rng& rng) {
    if (k < 1) throw ParamError("random_invertible: k must be >= 1");
    for (;;) {
        MatrixGF m = random_matrix(f, k, k, rng);
        if (rank(m) == k) return m;
    }
}

MatrixGF random_permutation(const FieldPtr& f, size_t n, Rng& rng) {
    if (n < 1) throw ParamError("random_permutation: n must be >= 1");
    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = i;
    rng.shuffle(perm);
    MatrixGF m(f, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, perm[i]) = f->one();
    return m;
}

std::optional<MatrixGF> rank_one_update_inverse(const VectorGF& a, const VectorGF& b) {
    require_same_field(a.field(), b.field());
    if (a.size() != b.size()) throw ParamError("rank_one_update_inverse: length mismatch");
    const Field& f = *a.field();
    Fe s{0};
    for (size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
    const Fe denom = f.add(s, f.one());
    if (denom.code == 0) return std::nullopt;  // <a,b> = -1: singular
    const Fe c = f.neg(f.inv(denom));
    const size_t n = a.size();
    MatrixGF out = MatrixGF::identity(a.field(), n);
    for (size_t i = 0; i < n; ++i) {
        const Fe bi = f.mul(c, b[i]);
        if (bi.code == 0) continue;
        for (size_t j = 0; j < n; ++j)
            out.at(i, j) = f.add(out.at(i, j), f.mul(bi, a[j]));
    }
    return out;
}

bool EchelonBasis::insert(std::span<const Fe> row) {
    if (row.size() != n_) throw ParamError("EchelonBasis: row length mismatch");
    if (full()) return false;
    std::vector<Fe> rem = reduce(row);
    if (rem.empty()) return false;
    size_t lead = 0;
    while (rem[lead].code == 0) ++lead;
    const Field& f = *field_;
    const Fe inv = f.inv(rem[lead]);
    if (inv.code != 1)
        for (size_t i = lead; i < n_; ++i) rem[i] = f.mul(rem[i], inv);
    const auto pos = std::lower_bound(lead_.begin(), lead_.end(), lead) - lead_.begin();
    lead_.insert(lead_.begin() + pos, lead);
    rows_.insert(rows_.begin() + pos, std::move(rem));
    return true;
}

bool EchelonBasis::contains(std::span<const Fe> row) const {
    return reduce(row).empty();
}

std::vector<Fe> EchelonBasis::reduce(std::span<const Fe> row) const {
    const Field& f = *field_;
    std::vector<Fe> v(row.begin(), row.end());
    for (size_t r = 0; r < rows_.size(); ++r) {
        const size_t l = lead_[r];
        if (v[l].code == 0) continue;
        const Fe factor = v[l];
        const auto& basis_row = rows_[r];
        for (size_t i = l; i < n_; ++i) v[i] = f.sub(v[i], f.mul(factor, basis_row[i]));
    }
    if (std::all_of(v.begin(), v.end(), [](Fe x) { return x.code == 0; })) return {};
    return v;
}

MatrixGF EchelonBasis::rref_basis() const {
    MatrixGF m(field_, rows_.size(), n_);
    for (size_t r = 0; r < rows_.size(); ++r)
        for (size_t c = 0; c < n_; ++c) m.at(r, c) = rows_[r][c];
    // rows are in echelon order already; one back-substitution pass remains
    return rows_.size() ? rref(m).r : m;
}

}  // namespace sqcode
