#include <algorithm>

#include "sqcode/phase_timer.hpp"
#include "sqcode/attacks.hpp"

namespace sqcode {
namespace {

size_t restricted_square_dim(const LinearCode& pub, const std::vector<size_t>& idx,
                             size_t cap) {
    return square_dim(restrict_to(pub, idx), cap);
}

std::vector<size_t> erase_value(std::vector<size_t> v, size_t value) {
    v.erase(std::find(v.begin(), v.end(), value));
    return v;
}

}  // namespace

// The restriction of the public code to an index set I squares to dimension
// 2k-1+|I ∩ L| as long as |I ∩ L| <= ell-1 and |I| - |I ∩ L| >= 2k. Readings
// are accepted only while |I ∩ L| <= ell-2 so that every one-step change
// stays inside the regime where the formula is exact.
BlAttackResult attack_bl(const LinearCode& pub, size_t ell, Rng& rng,
                         const AttackOptions& opts) {
    const size_t n = pub.length();
    const size_t k = pub.dim();
    const size_t l_size = 3 * ell;
    // For ell = 1 the reading with one L-position equals the saturated one,
    // so the distinguisher cannot see L at all.
    if (ell < 2 || ell >= k) throw ParamError("attack_bl: need 2 <= ell < k");
    if (n < 2 * k + l_size)
        throw ParamError("attack_bl: need n >= 2k + 3*ell for a usable index set");

    const size_t isize = std::min(n, 2 * k + ell + 2);
    const size_t cap = 2 * k + ell;  // readings above 2k-2+ell are useless
    AttackReport report;
    PhaseTimer total;

    for (uint32_t round = 0; round < opts.resample_cap; ++round) {
        std::vector<size_t> idx = rng.sample_distinct(n, isize);
        if (restrict_to(pub, idx).dim() < k) {
            ++report.resamples;
            continue;
        }
        size_t cur = restricted_square_dim(pub, idx, cap);
        ++report.trials;
        if (cur < 2 * k - 1 || cur > 2 * k - 1 + (ell - 2)) {
            ++report.resamples;
            continue;
        }
        const size_t j_size = cur - (2 * k - 1);

        // Peel off the L-positions inside idx: removing one drops the
        // reading by exactly one, removing anything else leaves it alone.
        std::vector<size_t> found;
        bool consistent = true;
        for (size_t x : std::vector<size_t>(idx)) {
            if (found.size() == j_size) break;
            const size_t d = restricted_square_dim(pub, erase_value(idx, x), cap);
            ++report.trials;
            if (d == cur - 1) {
                found.push_back(x);
                idx = erase_value(idx, x);
                --cur;
            } else if (d != cur) {
                consistent = false;
                break;
            }
        }
        if (!consistent || found.size() != j_size || cur != 2 * k - 1) {
            ++report.resamples;
            continue;
        }

        // idx is now disjoint from L. Swap one of its elements for each
        // outside candidate: the reading climbs to 2k iff the candidate
        // belongs to L.
        const size_t swap_out = idx[0];
        const std::vector<size_t> probe_base = erase_value(idx, swap_out);
        std::vector<uint8_t> inside(n, 0);
        for (size_t x : idx) inside[x] = 1;
        for (size_t x : found) inside[x] = 1;
        for (size_t y = 0; y < n && consistent; ++y) {
            if (inside[y]) continue;
            std::vector<size_t> probe = probe_base;
            probe.push_back(y);
            std::sort(probe.begin(), probe.end());
            const size_t d = restricted_square_dim(pub, probe, cap);
            ++report.trials;
            if (d == 2 * k) {
                found.push_back(y);
            } else if (d != 2 * k - 1) {
                consistent = false;
            }
        }
        if (!consistent || found.size() != l_size) {
            ++report.resamples;
            continue;
        }

        std::sort(found.begin(), found.end());
        report.phase_seconds.emplace_back("total", total.elapsed());
        return {BlCrack{std::move(found)}, std::move(report)};
    }
    throw AttackError("attack_bl: resample cap exhausted after " +
                      std::to_string(report.resamples) + " rounds");
}

Fe bl_crack_decrypt(const BlCrack& crack, const MatrixGF& pub_p, const VectorGF& ct) {
    const FieldPtr& f = pub_p.field();
    const size_t n = pub_p.cols();
    if (ct.size() != n) throw ParamError("bl_crack_decrypt: ciphertext length mismatch");
    const auto& L = crack.L;
    // Solve P y^T = 0, sum_L y = 1, y = 0 off L; any solution decrypts.
    MatrixGF sys(f, pub_p.rows() + 1, L.size());
    for (size_t r = 0; r < pub_p.rows(); ++r)
        for (size_t c = 0; c < L.size(); ++c) sys.at(r, c) = pub_p.at(r, L[c]);
    for (size_t c = 0; c < L.size(); ++c) sys.at(pub_p.rows(), c) = f->one();
    VectorGF rhs(f, pub_p.rows() + 1);
    rhs[pub_p.rows()] = f->one();
    auto y = solve(sys, rhs);
    if (!y) throw AttackError("bl_crack_decrypt: recovered set does not decrypt");
    Fe acc{0};
    for (size_t c = 0; c < L.size(); ++c)
        acc = f->add(acc, f->mul((*y)[c], ct[L[c]]));
    return acc;
}

}  // namespace sqcode
