#include <chrono>

#include "sqcode/attacks.hpp"
#include "sqcode/poly.hpp"

namespace sqcode {

std::string AttackReport::summary() const {
    std::string out = "trials=" + std::to_string(trials) +
                      " resamples=" + std::to_string(resamples);
    for (const auto& [name, secs] : phase_seconds) {
        char buf[64];
        snprintf(buf, sizeof(buf), " %s=%.3fs", name.c_str(), secs);
        out += buf;
    }
    return out;
}

namespace {

// One filtration refinement: given consecutive chain codes lower = C(i,j)
// and upper = C(i-1,j), return C(i+1,j) = {c in lower : c * upper <= lower^2}.
// The membership condition is linear in the coordinates of c over lower's
// basis, one equation per (parity check of lower^2) x (basis row of upper).
LinearCode refine(const LinearCode& lower, const LinearCode& upper) {
    const FieldPtr& f = lower.field();
    const size_t n = lower.length();
    const size_t d = lower.dim();

    const LinearCode sq = square(lower);
    if (sq.dim() == n) throw NotGrsError("filtration: square fills the whole space");
    const MatrixGF checks = nullspace(sq.generator());

    MatrixGF sys(f, checks.rows() * upper.dim(), d);
    size_t row = 0;
    std::vector<Fe> wh(n);
    const Field& ff = *f;
    for (size_t w = 0; w < checks.rows(); ++w) {
        for (size_t h = 0; h < upper.dim(); ++h) {
            for (size_t i = 0; i < n; ++i)
                wh[i] = ff.mul(checks.at(w, i), upper.generator().at(h, i));
            for (size_t t = 0; t < d; ++t) {
                Fe acc{0};
                for (size_t i = 0; i < n; ++i)
                    acc = ff.add(acc, ff.mul(wh[i], lower.generator().at(t, i)));
                sys.at(row, t) = acc;
            }
            ++row;
        }
    }
    const MatrixGF coeffs = nullspace(sys);
    if (coeffs.rows() != d - 1)
        throw NotGrsError("filtration: refinement space has dimension " +
                          std::to_string(coeffs.rows()) + ", expected " +
                          std::to_string(d - 1));
    return LinearCode::from_generator(coeffs.mul(lower.generator()));
}

// C(i,j) chain along the first index, starting from (start_j already applied)
// until the code is one-dimensional. chain[i] = C(i, j).
std::vector<LinearCode> build_chain(const LinearCode& base, size_t expected_start_dim) {
    std::vector<LinearCode> chain;
    chain.push_back(base);
    if (base.dim() != expected_start_dim)
        throw NotGrsError("filtration: chain start has wrong dimension");
    if (base.dim() == 1) return chain;
    LinearCode first = subcode_vanishing_at(base, 0);
    if (first.dim() != base.dim() - 1)
        throw NotGrsError("filtration: shortening did not drop the dimension by one");
    chain.push_back(first);
    while (chain.back().dim() > 1) {
        chain.push_back(refine(chain.back(), chain[chain.size() - 2]));
    }
    return chain;
}

}  // namespace

GrsSpec attack_filtration(const LinearCode& code) {
    const size_t n = code.length();
    const size_t k = code.dim();
    if (2 * k > n)
        throw ParamError("attack_filtration: dimension exceeds n/2, run on the dual");
    if (n < 4 || k < 2) throw ParamError("attack_filtration: need n >= 4 and k >= 2");
    const FieldPtr& fp = code.field();
    const Field& f = *fp;

    // Vanishing chains anchored at the first two positions. The support is
    // normalized so position 0 evaluates 0 and position 1 evaluates 1; an
    // affine substitution realizes this for any GRS code without moving
    // support points to infinity.
    const std::vector<LinearCode> chain_i = build_chain(code, k);
    const LinearCode base_j = subcode_vanishing_at(code, 1);
    if (base_j.dim() != k - 1)
        throw NotGrsError("filtration: shortening did not drop the dimension by one");
    std::vector<LinearCode> chain_ij;
    if (k == 2) {
        chain_ij.push_back(base_j);
    } else {
        LinearCode c11 = subcode_vanishing_at(base_j, 0);
        if (c11.dim() != k - 2)
            throw NotGrsError("filtration: shortening did not drop the dimension by one");
        chain_ij.push_back(base_j);
        chain_ij.push_back(c11);
        while (chain_ij.back().dim() > 1)
            chain_ij.push_back(refine(chain_ij.back(), chain_ij[chain_ij.size() - 2]));
    }

    // c spans C(k-1, 0): the evaluation of a multiple of x^{k-1}.
    // cp spans C(k-2, 1): a multiple of x^{k-2} (x - 1).
    const VectorGF c = chain_i.back().generator().row(0);
    const VectorGF cp = chain_ij.back().generator().row(0);
    if (c[0].code != 0 || cp[1].code != 0)
        throw NotGrsError("filtration: extremal codewords do not vanish as required");
    if (c[1].code == 0) throw NotGrsError("filtration: zero coordinate in extremal codeword");
    for (size_t i = 2; i < n; ++i)
        if (c[i].code == 0 || cp[i].code == 0)
            throw NotGrsError("filtration: zero coordinate in extremal codeword");

    // On positions >= 2 the quotient cp/c evaluates nu (x-1)/x, nu an
    // unknown scalar from the two basis normalizations. Any assumed nu
    // outside the value set gives a pole-free change of support fixing 0
    // and 1, so pick the first such; for full-support codes (n = q) this
    // forces the true nu.
    std::vector<Fe> v(n);
    std::vector<bool> taken(f.q(), false);
    for (size_t i = 2; i < n; ++i) {
        v[i] = f.div(cp[i], c[i]);
        taken[v[i].code] = true;
    }
    Fe nu{0};
    for (uint32_t cand = 1; cand < f.q(); ++cand) {
        if (!taken[cand]) {
            nu = Fe{cand};
            break;
        }
    }
    if (nu.code == 0) throw NotGrsError("filtration: no admissible normalization scalar");

    // Support: invert y = nu (x-1)/x, i.e. x = 1/(1 - y/nu).
    VectorGF support(fp, n);
    support[0] = f.zero();
    support[1] = f.one();
    const Fe nu_inv = f.inv(nu);
    std::vector<bool> seen(f.q(), false);
    seen[0] = seen[1] = true;
    for (size_t i = 2; i < n; ++i) {
        const Fe denom = f.sub(f.one(), f.mul(v[i], nu_inv));
        if (denom.code == 0) throw NotGrsError("filtration: support point escapes to infinity");
        support[i] = f.inv(denom);
        if (support[i].code <= 1 || seen[support[i].code])
            throw NotGrsError("filtration: recovered support collides");
        seen[support[i].code] = true;
    }

    // Multipliers from c = y * (const * x^{k-1}); the constant is absorbed.
    // Position 0 needs interpolation because x_0 = 0 kills c there.
    VectorGF mult(fp, n);
    for (size_t i = 1; i < n; ++i)
        mult[i] = f.div(c[i], f.pow(support[i], k - 1));

    bool found_b0 = false;
    std::vector<Fe> xs(k), ys(k);
    for (size_t row = 0; row < k && !found_b0; ++row) {
        const VectorGF cw = code.generator().row(row);
        if (cw[0].code == 0) continue;
        for (size_t i = 0; i < k; ++i) {
            xs[i] = support[i + 1];
            ys[i] = f.div(cw[i + 1], mult[i + 1]);
        }
        const poly::Poly p = poly::interpolate(f, xs, ys);
        const Fe p0 = poly::eval(f, p, f.zero());
        if (p0.code == 0) continue;  // this codeword cannot see position 0
        mult[0] = f.div(cw[0], p0);
        found_b0 = true;
    }
    if (!found_b0)
        throw NotGrsError("filtration: no basis codeword usable for the first multiplier");

    GrsSpec spec(std::move(support), std::move(mult), k);
    if (!code_equal(code, grs_code(spec)))
        throw NotGrsError("filtration: recovered spec does not reproduce the code");
    return spec;
}

GrsSpec grs_recover(const LinearCode& code) {
    const size_t n = code.length();
    const size_t k = code.dim();
    if (2 * k <= n) return attack_filtration(code);
    if (k >= n) throw ParamError("grs_recover: the full space is not a GRS code");
    const GrsSpec dual_spec = attack_filtration(dual(code));
    GrsSpec spec = grs_dual_spec(dual_spec);
    if (!code_equal(code, grs_code(spec)))
        throw NotGrsError("grs_recover: dual-path spec does not reproduce the code");
    return spec;
}

size_t relation_rank_check(const VectorGF& z1, const VectorGF& z2, const VectorGF& z3,
                           const LinearCode& pub) {
    const size_t k = pub.dim();
    const FieldPtr& f = pub.field();
    const MatrixGF gen_t = pub.generator().transpose();
    auto coords = [&](const VectorGF& z) {
        auto sol = solve(gen_t, z);
        if (!sol) throw ParamError("relation_rank_check: word not in the code");
        return *sol;
    };
    const VectorGF a1 = coords(z1), a2 = coords(z2), a3 = coords(z3);
    const Field& ff = *f;
    MatrixGF a(f, 3, 3 * k);
    for (size_t j = 0; j < k; ++j) {
        a.at(0, j) = a2[j];
        a.at(0, k + j) = ff.neg(a1[j]);
        a.at(1, j) = a3[j];
        a.at(1, 2 * k + j) = ff.neg(a1[j]);
        a.at(2, k + j) = ff.neg(a3[j]);
        a.at(2, 2 * k + j) = a2[j];
    }
    return rank(a);
}

}  // namespace sqcode
