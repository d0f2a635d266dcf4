#include "sqcode/grs.hpp"

#include <algorithm>

#include "sqcode/poly.hpp"

namespace sqcode {

GrsSpec::GrsSpec(VectorGF support, VectorGF multipliers, size_t k_)
    : x(std::move(support)), y(std::move(multipliers)), k(k_) {
    require_same_field(x.field(), y.field());
    const size_t n = x.size();
    if (y.size() != n) throw ParamError("GrsSpec: support/multiplier length mismatch");
    if (k < 1 || k >= n) throw ParamError("GrsSpec: need 1 <= k < n");
    if (n > x.field()->q()) throw ParamError("GrsSpec: n exceeds field size");
    for (size_t i = 0; i < n; ++i) {
        if (y[i].code == 0) throw ParamError("GrsSpec: multipliers must be nonzero");
    }
    std::vector<uint32_t> codes(n);
    for (size_t i = 0; i < n; ++i) codes[i] = x[i].code;
    std::sort(codes.begin(), codes.end());
    if (std::adjacent_find(codes.begin(), codes.end()) != codes.end())
        throw ParamError("GrsSpec: support points must be pairwise distinct");
}

MatrixGF grs_generator(const GrsSpec& spec) {
    const size_t n = spec.length();
    const Field& f = *spec.field();
    MatrixGF g(spec.field(), spec.k, n);
    for (size_t i = 0; i < n; ++i) {
        Fe cur = spec.y[i];
        for (size_t j = 0; j < spec.k; ++j) {
            g.at(j, i) = cur;
            cur = f.mul(cur, spec.x[i]);
        }
    }
    return g;
}

LinearCode grs_code(const GrsSpec& spec) {
    return LinearCode::from_generator(grs_generator(spec));
}

VectorGF grs_encode(const GrsSpec& spec, const VectorGF& msg) {
    require_same_field(spec.field(), msg.field());
    if (msg.size() != spec.k) throw ParamError("grs_encode: message length must be k");
    const Field& f = *spec.field();
    const size_t n = spec.length();
    VectorGF out(spec.field(), n);
    for (size_t i = 0; i < n; ++i) {
        const Fe v = poly::eval(f, msg.data(), spec.x[i]);
        out[i] = f.mul(spec.y[i], v);
    }
    return out;
}

std::optional<GrsDecodeResult> grs_decode(const GrsSpec& spec, const VectorGF& received) {
    require_same_field(spec.field(), received.field());
    const size_t n = spec.length();
    const size_t k = spec.k;
    if (received.size() != n) throw ParamError("grs_decode: length mismatch");
    const Field& f = *spec.field();
    const size_t t = (n - k) / 2;

    // Scale out the multipliers, then find E (deg <= t) and N (deg <= t+k-1)
    // with E(x_i) r_i = N(x_i) for all i. Any nonzero kernel vector has
    // E != 0: were E = 0, N would vanish on n > deg N points.
    std::vector<Fe> r(n);
    for (size_t i = 0; i < n; ++i) r[i] = f.mul(received[i], f.inv(spec.y[i]));

    const size_t ecols = t + 1, ncols = t + k;
    MatrixGF sys(spec.field(), n, ecols + ncols);
    for (size_t i = 0; i < n; ++i) {
        Fe pw = f.one();
        for (size_t j = 0; j < std::max(ecols, ncols); ++j) {
            if (j < ecols) sys.at(i, j) = f.mul(r[i], pw);
            if (j < ncols) sys.at(i, ecols + j) = f.neg(pw);
            pw = f.mul(pw, spec.x[i]);
        }
    }
    const MatrixGF ker = nullspace(sys);
    if (ker.rows() == 0) return std::nullopt;

    poly::Poly e(ecols), nn(ncols);
    for (size_t j = 0; j < ecols; ++j) e[j] = ker.at(0, j);
    for (size_t j = 0; j < ncols; ++j) nn[j] = ker.at(0, ecols + j);
    e = poly::trim(std::move(e));
    nn = poly::trim(std::move(nn));
    if (e.empty()) return std::nullopt;

    auto [quot, rem] = poly::divmod(f, nn, e);
    if (!rem.empty()) return std::nullopt;
    if (poly::degree(quot) >= static_cast<int>(k)) return std::nullopt;

    VectorGF msg(spec.field(), k);
    for (size_t j = 0; j < quot.size(); ++j) msg[j] = quot[j];
    VectorGF codeword = grs_encode(spec, msg);
    const size_t dist = codeword.hamming_distance(received);
    if (dist > t) return std::nullopt;
    return GrsDecodeResult{std::move(codeword), std::move(msg), dist};
}

GrsSpec grs_dual_spec(const GrsSpec& spec) {
    const size_t n = spec.length();
    if (spec.k >= n) throw ParamError("grs_dual_spec: k must be < n");
    const Field& f = *spec.field();
    VectorGF yd(spec.field(), n);
    for (size_t i = 0; i < n; ++i) {
        Fe prod = f.one();
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            prod = f.mul(prod, f.sub(spec.x[i], spec.x[j]));
        }
        yd[i] = f.inv(f.mul(spec.y[i], prod));
    }
    return GrsSpec(spec.x, std::move(yd), n - spec.k);
}

GrsSpec random_grs_spec(const FieldPtr& f, size_t n, size_t k, Rng& rng) {
    if (n > f->q()) throw ParamError("random_grs_spec: n exceeds field size");
    std::vector<size_t> codes = rng.sample_distinct(f->q(), n);
    rng.shuffle(codes);
    VectorGF x(f, n), y(f, n);
    for (size_t i = 0; i < n; ++i) {
        x[i] = Fe{static_cast<uint32_t>(codes[i])};
        y[i] = f->sample_nonzero(rng);
    }
    return GrsSpec(std::move(x), std::move(y), k);
}

}  // namespace sqcode
