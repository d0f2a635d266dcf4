#include "sqcode/schemes.hpp"

#include <algorithm>

namespace sqcode {

VectorGF random_error(const FieldPtr& f, size_t n, size_t weight, Rng& rng) {
    if (weight > n) throw ParamError("random_error: weight exceeds length");
    VectorGF e(f, n);
    for (size_t pos : rng.sample_distinct(n, weight)) e[pos] = f->sample_nonzero(rng);
    return e;
}

// --------------------------------------------------------------------------
// Wieschebrink

WieschebrinkKeys wieschebrink_keygen(const FieldPtr& f, size_t n, size_t k, size_t r,
                                     Rng& rng) {
    if (k < 1 || k >= n || n > f->q()) throw ParamError("wieschebrink_keygen: need 1 <= k < n <= q");
    if (r < 1) throw ParamError("wieschebrink_keygen: need r >= 1");
    GrsSpec spec = random_grs_spec(f, n, k, rng);
    MatrixGF cols = random_matrix(f, k, r, rng);
    MatrixGF s = random_invertible(f, k, rng);
    MatrixGF q = random_permutation(f, n + r, rng);

    const MatrixGF gprime = grs_generator(spec).hstack(cols);
    const MatrixGF s_inv = *inverse(s);
    const MatrixGF g_pub = s_inv.mul(gprime).mul(q.transpose());  // Q^{-1} = Q^T

    // public position j carries G' column t where Q[j][t] = 1
    std::vector<size_t> random_positions;
    for (size_t j = 0; j < n + r; ++j) {
        for (size_t t = n; t < n + r; ++t) {
            if (q.at(j, t).code != 0) {
                random_positions.push_back(j);
                break;
            }
        }
    }
    std::sort(random_positions.begin(), random_positions.end());

    return WieschebrinkKeys{
        WieschebrinkSecretKey{std::move(spec), std::move(cols), std::move(s),
                              std::move(q), std::move(random_positions)},
        WieschebrinkPublicKey{g_pub, n, k, r}};
}

VectorGF wieschebrink_encrypt(const WieschebrinkPublicKey& pk, const VectorGF& msg,
                              Rng& rng) {
    if (msg.size() != pk.k) throw ParamError("wieschebrink_encrypt: message length must be k");
    const size_t t = (pk.n - pk.k) / 2;
    const VectorGF e = random_error(msg.field(), pk.n + pk.r, t, rng);
    return pk.g_pub.apply_left(msg).add(e);
}

std::optional<VectorGF> wieschebrink_decrypt(const WieschebrinkSecretKey& sk,
                                             const VectorGF& ct) {
    const size_t n = sk.spec.length();
    const size_t r = sk.random_cols.cols();
    if (ct.size() != n + r) throw ParamError("wieschebrink_decrypt: ciphertext length mismatch");
    // c Q returns to [G | C] order; the GRS part is the first n coordinates.
    const VectorGF w = sk.q_perm.apply_left(ct);
    VectorGF grs_part(ct.field(), n);
    for (size_t i = 0; i < n; ++i) grs_part[i] = w[i];
    auto dec = grs_decode(sk.spec, grs_part);
    if (!dec) return std::nullopt;
    return sk.s.apply_left(dec->message);
}

// --------------------------------------------------------------------------
// Bogdanov-Lee

BlKeys bl_keygen(const FieldPtr& f, size_t n, size_t k, size_t ell, Rng& rng) {
    if (ell < 1 || ell >= k) throw ParamError("bl_keygen: need 1 <= ell < k");
    if (3 * ell >= n) throw ParamError("bl_keygen: need 3*ell < n");
    if (n - 3 * ell < k) throw ParamError("bl_keygen: need n - 3*ell >= k");
    if (n >= f->q()) throw ParamError("bl_keygen: need n < q");

    // n distinct nonzero evaluation points
    std::vector<size_t> codes = rng.sample_distinct(f->q() - 1, n);
    rng.shuffle(codes);
    VectorGF x(f, n);
    for (size_t i = 0; i < n; ++i) x[i] = Fe{static_cast<uint32_t>(codes[i] + 1)};

    std::vector<size_t> L = rng.sample_distinct(n, 3 * ell);

    MatrixGF g(f, k, n);
    for (size_t i = 0; i < n; ++i) {
        const bool masked = std::binary_search(L.begin(), L.end(), i);
        Fe cur = x[i];
        for (size_t j = 0; j < k; ++j) {
            g.at(j, i) = (masked && j >= ell) ? Fe{0} : cur;
            cur = f->mul(cur, x[i]);
        }
    }
    MatrixGF s = random_invertible(f, k, rng);
    MatrixGF p = s.mul(g);
    return BlKeys{BlSecretKey{std::move(L), std::move(x), std::move(g), std::move(s), ell, k},
                  BlPublicKey{std::move(p), n, k, ell}};
}

VectorGF bl_encrypt(const BlPublicKey& pk, Fe msg, double eta, Rng& rng) {
    const FieldPtr& f = pk.p.field();
    const VectorGF x = random_vector(f, pk.k, rng);
    VectorGF c = pk.p.apply_left(x);
    for (size_t i = 0; i < pk.n; ++i) {
        c[i] = f->add(c[i], msg);
        if (rng.chance(eta)) c[i] = f->add(c[i], f->sample_nonzero(rng));
    }
    return c;
}

namespace {

// Decryption functional: a solution y of { rows * y^T = 0 on L, sum_L y = 1,
// y = 0 off L }, with as few zero coordinates on L as possible so that the
// failure law matches the q-ary channel on all of L.
VectorGF bl_solve_functional(const MatrixGF& rows, const std::vector<size_t>& L,
                             size_t n) {
    const FieldPtr& f = rows.field();
    const size_t w = L.size();
    MatrixGF sys(f, rows.rows() + 1, w);
    for (size_t r = 0; r < rows.rows(); ++r)
        for (size_t c = 0; c < w; ++c) sys.at(r, c) = rows.at(r, L[c]);
    for (size_t c = 0; c < w; ++c) sys.at(rows.rows(), c) = f->one();
    VectorGF rhs(f, rows.rows() + 1);
    rhs[rows.rows()] = f->one();

    auto part = solve(sys, rhs);
    if (!part) throw ParamError("bl decryption system inconsistent");
    const MatrixGF null = nullspace(sys);

    VectorGF yl = *part;
    if (null.rows() > 0) {
        Rng mix(0x626c6d6978ULL);  // fixed stream: decryption stays deterministic
        for (int attempt = 0; attempt < 64; ++attempt) {
            bool ok = std::none_of(yl.data().begin(), yl.data().end(),
                                   [](Fe v) { return v.code == 0; });
            if (ok) break;
            yl = *part;
            for (size_t r = 0; r < null.rows(); ++r)
                yl = yl.add(null.row(r).scale(f->sample(mix)));
        }
    }
    VectorGF y(f, n);
    for (size_t c = 0; c < w; ++c) y[L[c]] = yl[c];
    return y;
}

}  // namespace

Fe bl_decrypt(const BlSecretKey& sk, const VectorGF& ct) {
    if (ct.size() != sk.g.cols()) throw ParamError("bl_decrypt: ciphertext length mismatch");
    const VectorGF y = bl_solve_functional(sk.g, sk.L, sk.g.cols());
    return inner_product(y, ct);
}

// --------------------------------------------------------------------------
// BBCRS

BbcrsKeys bbcrs_keygen(const FieldPtr& f, size_t n, size_t k, Rng& rng,
                       const BbcrsKeygenOptions& opts) {
    if (k < 1 || k >= n || n > f->q()) throw ParamError("bbcrs_keygen: need 1 <= k < n <= q");
    GrsSpec spec = random_grs_spec(f, n, k, rng);
    MatrixGF s = random_invertible(f, k, rng);
    MatrixGF pi = random_permutation(f, n, rng);
    const MatrixGF pi_inv = pi.transpose();

    VectorGF alpha(f, n), beta(f, n);
    MatrixGF q_inv = MatrixGF::identity(f, n);
    if (opts.degenerate) {
        q_inv = pi_inv;
    } else {
        const LinearCode c = LinearCode::from_generator(grs_generator(spec).mul(pi_inv));
        for (;;) {
            alpha = random_vector(f, n, rng);
            beta = random_vector(f, n, rng);
            if (alpha.is_zero() || beta.is_zero()) continue;
            // With b = alpha and a = beta Pi^{-1}: Q = Pi + alpha^T beta
            // = (I + b^T a) Pi, invertible iff <a, b> != -1.
            const VectorGF a = pi.apply_right(beta);  // = beta Pi^T = beta Pi^{-1}
            auto p_inv = rank_one_update_inverse(a, alpha);
            if (!p_inv) continue;
            if (opts.avoid_weak) {
                if (contains(c, a)) continue;  // a in C folds the update into the code
                // lambda is collinear with alpha, so lambda in C-dual iff alpha is
                if (contains(dual(c), alpha)) continue;
            }
            q_inv = pi_inv.mul(*p_inv);
            break;
        }
    }
    const MatrixGF g_pub = inverse(s)->mul(grs_generator(spec)).mul(q_inv);
    return BbcrsKeys{BbcrsSecretKey{std::move(spec), std::move(s), std::move(pi),
                                    std::move(alpha), std::move(beta)},
                     BbcrsPublicKey{g_pub, n, k}};
}

VectorGF bbcrs_encrypt(const BbcrsPublicKey& pk, const VectorGF& msg, Rng& rng) {
    if (msg.size() != pk.k) throw ParamError("bbcrs_encrypt: message length must be k");
    const size_t t = (pk.n - pk.k) / 2;
    const VectorGF e = random_error(msg.field(), pk.n, t, rng);
    return pk.g_pub.apply_left(msg).add(e);
}

std::optional<BbcrsDecryptResult> bbcrs_decrypt(const BbcrsSecretKey& sk,
                                                const VectorGF& ct) {
    const size_t n = sk.spec.length();
    const size_t k = sk.spec.k;
    if (ct.size() != n) throw ParamError("bbcrs_decrypt: ciphertext length mismatch");
    (void)k;
    const FieldPtr& f = ct.field();

    // c Q = m S^{-1} G_sec + e Pi + (e R); e R = <e, alpha> beta, so scan the
    // q guesses and keep the smallest that decodes consistently.
    const MatrixGF q = sk.pi.add(outer_product(sk.alpha, sk.beta));
    const VectorGF cq = q.apply_left(ct);

    // Every valid decomposition c = m G_pub + e with wt(e) <= t surfaces at
    // exactly one guess, so scanning them all enumerates the full set. The
    // returned one is canonical: minimal error weight, ties broken by the
    // error vector and then the message, which keeps secret-key decryption
    // and crack decryption in agreement even for ambiguous ciphertexts.
    std::optional<BbcrsDecryptResult> best;
    std::optional<std::pair<size_t, std::vector<Fe>>> best_key;
    size_t hits = 0;
    const uint32_t guesses = sk.beta.is_zero() ? 1 : f->q();
    for (uint32_t g = 0; g < guesses; ++g) {
        const VectorGF cand = g == 0 ? cq : cq.sub(sk.beta.scale(Fe{g}));
        auto dec = grs_decode(sk.spec, cand);
        if (!dec) continue;
        // The residual must be e Pi for an e with <e, alpha> equal to the
        // guess; together with the weight bound this is exactly the statement
        // that c = m G_pub + e. Wrong guesses that happen to decode fail here.
        const VectorGF residual = cand.sub(dec->codeword);
        const VectorGF e = sk.pi.apply_right(residual);  // residual Pi^{-1}
        if (inner_product(e, sk.alpha) != Fe{g}) continue;
        VectorGF m = sk.s.apply_left(dec->message);
        ++hits;
        std::pair<size_t, std::vector<Fe>> key{e.hamming_weight(), e.data()};
        if (!best_key || key < *best_key) {
            best_key = std::move(key);
            best = BbcrsDecryptResult{std::move(m), Fe{g}, false};
        }
    }
    if (best) best->gamma_tie = hits > 1;
    return best;
}

}  // namespace sqcode
