#pragma once

#include <optional>

#include "sqcode/codeops.hpp"

namespace sqcode {

// GRS_k(x, y): evaluations of polynomials of degree < k at the distinct
// support points x, scaled componentwise by the nonzero multipliers y.
struct GrsSpec {
    GrsSpec(VectorGF support, VectorGF multipliers, size_t k);

    const FieldPtr& field() const { return x.field(); }
    size_t length() const { return x.size(); }

    VectorGF x;  // pairwise distinct support
    VectorGF y;  // nonzero multipliers
    size_t k;    // 1 <= k < n <= q
};

// k x n matrix with row j = (y_1 x_1^j, ..., y_n x_n^j); rank k.
MatrixGF grs_generator(const GrsSpec& spec);

LinearCode grs_code(const GrsSpec& spec);

// msg holds the polynomial coefficients, low degree first.
VectorGF grs_encode(const GrsSpec& spec, const VectorGF& msg);

struct GrsDecodeResult {
    VectorGF codeword;
    VectorGF message;
    size_t errors;
};

// Bounded-distance decoding up to t = (n-k)/2 errors via Berlekamp-Welch
// rational interpolation. Returns nullopt (decoding failure) when no
// codeword lies within distance t of the received word, which makes it a
// reliable rejector for wrong-guess branches in decryption loops.
std::optional<GrsDecodeResult> grs_decode(const GrsSpec& spec, const VectorGF& received);

// Closed-form dual: GRS_{n-k}(x, y') with y'_i = y_i^{-1} prod_{j != i} (x_i - x_j)^{-1}.
GrsSpec grs_dual_spec(const GrsSpec& spec);

GrsSpec random_grs_spec(const FieldPtr& f, size_t n, size_t k, Rng& rng);

}  // namespace sqcode
