#pragma once

#include <optional>

#include "sqcode/grs.hpp"

namespace sqcode {

// ---------------------------------------------------------------------------
// Wieschebrink: GRS generator with r uniformly random columns appended,
// scrambled as G_pub = S^{-1} [G | C_1..C_r] Q^{-1}.

struct WieschebrinkSecretKey {
    GrsSpec spec;                         // the hidden [n, k] GRS code
    MatrixGF random_cols;                 // k x r
    MatrixGF s;                           // k x k invertible
    MatrixGF q_perm;                      // (n+r) x (n+r) permutation
    std::vector<size_t> random_positions; // position of each random column in public order
};

struct WieschebrinkPublicKey {
    MatrixGF g_pub;  // k x (n+r)
    size_t n, k, r;
};

struct WieschebrinkKeys {
    WieschebrinkSecretKey secret;
    WieschebrinkPublicKey pub;
};

WieschebrinkKeys wieschebrink_keygen(const FieldPtr& f, size_t n, size_t k, size_t r,
                                     Rng& rng);

// McEliece-style c = m G_pub + e with weight(e) = floor((n-k)/2); errors
// landing on inserted columns are deleted before decoding, so the full
// budget is always safe.
VectorGF wieschebrink_encrypt(const WieschebrinkPublicKey& pk, const VectorGF& msg,
                              Rng& rng);

std::optional<VectorGF> wieschebrink_decrypt(const WieschebrinkSecretKey& sk,
                                             const VectorGF& ct);

// ---------------------------------------------------------------------------
// Bogdanov-Lee: P = S G where column i of G is (x_i, ..., x_i^l, 0, .., 0)
// on the secret set L (|L| = 3l) and full powers up to x_i^k elsewhere.
// Encrypts one field element; additively homomorphic.

struct BlSecretKey {
    std::vector<size_t> L;  // sorted, |L| = 3*ell
    VectorGF x;             // n distinct nonzero
    MatrixGF g;             // k x n
    MatrixGF s;             // k x k invertible
    size_t ell, k;
};

struct BlPublicKey {
    MatrixGF p;  // k x n
    size_t n, k, ell;
};

struct BlKeys {
    BlSecretKey secret;
    BlPublicKey pub;
};

BlKeys bl_keygen(const FieldPtr& f, size_t n, size_t k, size_t ell, Rng& rng);

// c = x P + m 1 + e, with e drawn from the q-ary symmetric channel of rate
// eta (each coordinate corrupted independently with probability eta).
VectorGF bl_encrypt(const BlPublicKey& pk, Fe msg, double eta, Rng& rng);

// Unconditionally computed; correct whenever the error vanishes on L.
Fe bl_decrypt(const BlSecretKey& sk, const VectorGF& ct);

// ---------------------------------------------------------------------------
// BBCRS (m = 1, z = 1): G_pub = S^{-1} G_sec Q^{-1} with Q = Pi + R,
// Pi a permutation and R = alpha^T beta of rank one, Q invertible.

struct BbcrsSecretKey {
    GrsSpec spec;    // the [n, k] GRS code behind G_sec
    MatrixGF s;      // k x k invertible
    MatrixGF pi;     // n x n permutation
    VectorGF alpha;  // R = alpha^T beta
    VectorGF beta;
};

struct BbcrsPublicKey {
    MatrixGF g_pub;  // k x n
    size_t n, k;
};

struct BbcrsKeys {
    BbcrsSecretKey secret;
    BbcrsPublicKey pub;
};

struct BbcrsKeygenOptions {
    // alpha = beta = 0, so Q is a plain permutation and the public code is
    // itself GRS. Test hook for the degenerate attack branch.
    bool degenerate = false;
    // Additionally reject draws where the rank-one part folds into the code
    // (a in C or lambda in C-dual), forcing the non-trivial attack branch.
    bool avoid_weak = false;
};

BbcrsKeys bbcrs_keygen(const FieldPtr& f, size_t n, size_t k, Rng& rng,
                       const BbcrsKeygenOptions& opts = {});

VectorGF bbcrs_encrypt(const BbcrsPublicKey& pk, const VectorGF& msg, Rng& rng);

struct BbcrsDecryptResult {
    VectorGF msg;
    Fe gamma;        // accepted guess of <e, alpha>
    bool gamma_tie;  // more than one gamma decoded consistently
};

// Scans all q guesses for e R = gamma beta, accepts the smallest gamma whose
// decode round-trips; nullopt when every guess fails (malformed ciphertext).
std::optional<BbcrsDecryptResult> bbcrs_decrypt(const BbcrsSecretKey& sk,
                                                const VectorGF& ct);

// Shared helper: error vector of exact weight w at distinct random positions.
VectorGF random_error(const FieldPtr& f, size_t n, size_t weight, Rng& rng);

}  // namespace sqcode
