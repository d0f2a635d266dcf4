#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sqcode/schemes.hpp"

namespace sqcode {

struct AttackOptions {
    // Cap on randomized candidate draws where a search is involved;
    // 0 means the per-attack default (50 * q^3 for the BBCRS triple search).
    uint64_t trial_cap = 0;
    // Cap on distinguisher resampling rounds (bad index sets and the like).
    uint32_t resample_cap = 100;
    // Worker threads for the embarrassingly parallel candidate loops; 1 is
    // the sequential reference mode. Acceptance is always by candidate index
    // in the RNG stream, so the recovered crack does not depend on jobs.
    uint32_t jobs = 1;
};

struct AttackReport {
    uint64_t trials = 0;     // randomized candidates examined
    uint64_t resamples = 0;  // distinguisher re-draws
    std::vector<std::pair<std::string, double>> phase_seconds;
    std::string summary() const;
};

// ---------------------------------------------------------------------------
// Filtration attack: full structure recovery of a GRS code from a generator
// matrix, via the chain of subcodes of words vanishing at the first two
// positions with prescribed multiplicity.

// Requires dim <= n/2 (callers dualize otherwise, see grs_recover), n >= 4,
// dim >= 2. Throws NotGrsError when the chain collapses, which is exactly
// the non-GRS case.
GrsSpec attack_filtration(const LinearCode& code);

// attack_filtration with the high-rate case handled by recovering the dual
// and mapping back through the closed-form dual spec.
GrsSpec grs_recover(const LinearCode& code);

// ---------------------------------------------------------------------------
// Wieschebrink key recovery.

struct WieschebrinkCrack {
    std::vector<size_t> random_positions;  // sorted, in public coordinates
    GrsSpec recovered_spec;                // for the public code punctured there
};

struct WieschebrinkAttackResult {
    WieschebrinkCrack crack;
    AttackReport report;
};

WieschebrinkAttackResult attack_wieschebrink(const LinearCode& pub, size_t n, size_t k,
                                             size_t r, Rng& rng,
                                             const AttackOptions& opts = {});

// Decrypts with recovered material only: delete the random positions,
// GRS-decode, then solve for the message against the public matrix.
std::optional<VectorGF> wieschebrink_crack_decrypt(const WieschebrinkCrack& crack,
                                                   const MatrixGF& g_pub,
                                                   const VectorGF& ct);

// ---------------------------------------------------------------------------
// Bogdanov-Lee key recovery.

struct BlCrack {
    std::vector<size_t> L;  // sorted
};

struct BlAttackResult {
    BlCrack crack;
    AttackReport report;
};

BlAttackResult attack_bl(const LinearCode& pub, size_t ell, Rng& rng,
                         const AttackOptions& opts = {});

Fe bl_crack_decrypt(const BlCrack& crack, const MatrixGF& pub_p, const VectorGF& ct);

// ---------------------------------------------------------------------------
// BBCRS key recovery.

struct BbcrsCrack {
    GrsSpec c_spec;     // the hidden GRS code C
    VectorGF a0;        // valid pair: p -> p + <lambda0, p> a0 maps C onto C_pub
    VectorGF lambda0;
    bool dual_path;     // attack ran on the dual and was mapped back
};

struct BbcrsAttackResult {
    BbcrsCrack crack;
    AttackReport report;
};

BbcrsAttackResult attack_bbcrs(const LinearCode& pub, Rng& rng,
                               const AttackOptions& opts = {});

std::optional<VectorGF> bbcrs_crack_decrypt(const BbcrsCrack& crack,
                                            const MatrixGF& g_pub,
                                            const VectorGF& ct);

// ---------------------------------------------------------------------------
// The 3 x 3k relation matrix rank (degenerate-triple detector): rank is 3
// unless the three codewords span a space of dimension <= 1.
size_t relation_rank_check(const VectorGF& z1, const VectorGF& z2, const VectorGF& z3,
                           const LinearCode& pub);

}  // namespace sqcode
