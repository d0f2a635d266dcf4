#pragma once

#include <optional>
#include <vector>

#include "sqcode/matgf.hpp"

namespace sqcode {

// A linear code stored by its canonical generator matrix: full-rank RREF.
// Two LinearCode values represent the same code iff their generators are
// identical, so code equality is a plain comparison. The zero code is not
// representable; operations that would produce it throw EmptyCodeError or
// return an empty optional, forcing callers to handle the degenerate case.
class LinearCode {
public:
    // RREFs the given matrix and keeps the nonzero rows.
    static LinearCode from_generator(const MatrixGF& gen);
    static LinearCode from_rows(const FieldPtr& f, const std::vector<VectorGF>& rows);

    const FieldPtr& field() const { return gen_.field(); }
    size_t length() const { return gen_.cols(); }
    size_t dim() const { return gen_.rows(); }
    const MatrixGF& generator() const { return gen_; }

    VectorGF encode(const VectorGF& msg) const { return gen_.apply_left(msg); }
    VectorGF random_codeword(Rng& rng) const;

    friend bool operator==(const LinearCode& a, const LinearCode& b) {
        return a.gen_ == b.gen_;
    }

private:
    explicit LinearCode(MatrixGF gen) : gen_(std::move(gen)) {}
    MatrixGF gen_;  // RREF, k x n, full rank
};

VectorGF cw_product(const VectorGF& a, const VectorGF& b);
Fe inner_product(const VectorGF& a, const VectorGF& b);

// Span of all componentwise products of codeword pairs.
LinearCode star_product(const LinearCode& a, const LinearCode& b);

// star_product(a, a), computed from the (k+1 choose 2) unordered row pairs.
LinearCode square(const LinearCode& a);

// Dimension-only variants; cap makes the elimination stop early and return
// cap + 1 (pass length() for an exact count).
size_t square_dim(const LinearCode& a, size_t cap);
size_t square_dim(const LinearCode& a);

// dim of span{ zs[i] * gens row j } for all i, j.
size_t product_span_dim(const std::vector<VectorGF>& zs, const MatrixGF& gens,
                        size_t cap);

LinearCode dual(const LinearCode& c);  // requires dim < length

// Codewords vanishing on I with the I columns deleted.
LinearCode shorten(const LinearCode& c, const std::vector<size_t>& positions);

// Columns at I deleted, no vanishing constraint.
LinearCode puncture(const LinearCode& c, const std::vector<size_t>& positions);

// Keep exactly the columns at I (puncture at the complement).
LinearCode restrict_to(const LinearCode& c, const std::vector<size_t>& positions);

// Codewords vanishing at one position, column kept (length preserved).
// Returns the same code if the column is identically zero.
LinearCode subcode_vanishing_at(const LinearCode& c, size_t position);

LinearCode code_sum(const LinearCode& a, const LinearCode& b);

// nullopt when the intersection is the zero code.
std::optional<LinearCode> intersect(const LinearCode& a, const LinearCode& b);

bool contains(const LinearCode& c, const VectorGF& v);
bool code_equal(const LinearCode& a, const LinearCode& b);

// The square-code distinguisher readout. For k with 2k-1 <= n a GRS code
// squares to dimension 2k-1; at high rate the dual squares to 2n-2k-1.
// dim_dual_sq is absent only for the full space (dual undefined).
struct SquareDimReport {
    size_t k = 0;
    size_t n = 0;
    size_t dim_sq = 0;
    std::optional<size_t> dim_dual_sq;
    bool grs_like = false;
};

SquareDimReport square_dim_report(const LinearCode& c);

}  // namespace sqcode
