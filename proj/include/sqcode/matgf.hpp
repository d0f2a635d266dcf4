#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sqcode/field.hpp"

namespace sqcode {

class MatrixGF;

// A word of fixed length over F_q. Value semantics throughout.
class VectorGF {
public:
    VectorGF(FieldPtr field, size_t n) : field_(std::move(field)), v_(n) {}
    VectorGF(FieldPtr field, std::vector<Fe> v) : field_(std::move(field)), v_(std::move(v)) {}

    const FieldPtr& field() const { return field_; }
    size_t size() const { return v_.size(); }
    Fe& operator[](size_t i) { return v_[i]; }
    Fe operator[](size_t i) const { return v_[i]; }
    std::span<const Fe> span() const { return v_; }
    std::vector<Fe>& data() { return v_; }
    const std::vector<Fe>& data() const { return v_; }

    VectorGF add(const VectorGF& other) const;
    VectorGF sub(const VectorGF& other) const;
    VectorGF scale(Fe c) const;
    bool is_zero() const;
    size_t hamming_weight() const;
    size_t hamming_distance(const VectorGF& other) const;

    friend bool operator==(const VectorGF& a, const VectorGF& b) {
        return a.v_ == b.v_;
    }

private:
    FieldPtr field_;
    std::vector<Fe> v_;
};

VectorGF random_vector(const FieldPtr& f, size_t n, Rng& rng);

// Dense row-major matrix over F_q.
class MatrixGF {
public:
    MatrixGF(FieldPtr field, size_t rows, size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols) {}

    static MatrixGF identity(const FieldPtr& f, size_t n);
    static MatrixGF from_rows(const FieldPtr& f, const std::vector<VectorGF>& rows);

    const FieldPtr& field() const { return field_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Fe& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
    Fe at(size_t r, size_t c) const { return a_[r * cols_ + c]; }
    std::span<const Fe> row_span(size_t r) const { return {a_.data() + r * cols_, cols_}; }
    std::span<Fe> row_span(size_t r) { return {a_.data() + r * cols_, cols_}; }
    VectorGF row(size_t r) const;

    MatrixGF mul(const MatrixGF& other) const;
    MatrixGF add(const MatrixGF& other) const;
    MatrixGF sub(const MatrixGF& other) const;
    MatrixGF scale(Fe c) const;
    MatrixGF transpose() const;
    MatrixGF hstack(const MatrixGF& right) const;
    MatrixGF vstack(const MatrixGF& below) const;
    MatrixGF row_select(const std::vector<size_t>& idx) const;
    MatrixGF col_select(const std::vector<size_t>& idx) const;

    // v * M, v a row vector of length rows().
    VectorGF apply_left(const VectorGF& v) const;
    // M * v^T, v of length cols().
    VectorGF apply_right(const VectorGF& v) const;

    friend bool operator==(const MatrixGF& a, const MatrixGF& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

private:
    FieldPtr field_;
    size_t rows_, cols_;
    std::vector<Fe> a_;
};

// Outer product b^T a (column b times row a), an |b| x |a| matrix.
MatrixGF outer_product(const VectorGF& b, const VectorGF& a);

struct RrefResult {
    MatrixGF r;
    size_t rank;
    std::vector<size_t> pivot_cols;
};

// Unique reduced row echelon form. Pivot selection is first nonzero entry
// scanning top-to-bottom, left-to-right, so the output is canonical.
RrefResult rref(const MatrixGF& m);

size_t rank(const MatrixGF& m);

// Exact rank if it is <= cap, otherwise cap + 1 (elimination stops early).
size_t rank_bounded(const MatrixGF& m, size_t cap);

// Rows form the canonical RREF basis of the right kernel {v : M v^T = 0}.
// May have zero rows.
MatrixGF nullspace(const MatrixGF& m);

// One solution of A x^T = b^T with free variables set to zero, or nullopt
// if the system is inconsistent.
std::optional<VectorGF> solve(const MatrixGF& a, const VectorGF& b);

std::optional<MatrixGF> inverse(const MatrixGF& m);

MatrixGF random_matrix(const FieldPtr& f, size_t rows, size_t cols, Rng& rng);
MatrixGF random_invertible(const FieldPtr& f, size_t k, Rng& rng);
MatrixGF random_permutation(const FieldPtr& f, size_t n, Rng& rng);

// (I + b^T a)^{-1} through the closed rank-one update formula; nullopt when
// <a,b> = -1, which is exactly the singular case.
std::optional<MatrixGF> rank_one_update_inverse(const VectorGF& a, const VectorGF& b);

// Incremental row-space accumulator in (non-reduced) echelon form. insert()
// costs O(rank * n); used everywhere a span dimension or membership test is
// needed without materializing a matrix.
class EchelonBasis {
public:
    EchelonBasis(FieldPtr field, size_t n) : field_(std::move(field)), n_(n) {}

    // Returns true if the row enlarged the span.
    bool insert(std::span<const Fe> row);
    bool insert(const VectorGF& v) { return insert(v.span()); }

    size_t rank() const { return rows_.size(); }
    bool full() const { return rows_.size() == n_; }
    bool contains(std::span<const Fe> row) const;

    // Canonical RREF matrix of the accumulated row space.
    MatrixGF rref_basis() const;

private:
    // reduce returns the remainder of row after elimination against the
    // current basis; empty vector if it reduced to zero.
    std::vector<Fe> reduce(std::span<const Fe> row) const;

    FieldPtr field_;
    size_t n_;
    std::vector<std::vector<Fe>> rows_;  // sorted by leading column, leading 1
    std::vector<size_t> lead_;
};

}  // namespace sqcode
