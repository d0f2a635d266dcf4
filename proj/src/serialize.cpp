#include "sqcode/serialize.hpp"

#include <cstdio>
#include <fstream>

namespace sqcode {
namespace {

const Json& need(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParamError(std::string("missing field \"") + key + "\"");
    return *it;
}

bool is_nonneg_int(const Json& v) {
    return v.is_number_unsigned() ||
           (v.is_number_integer() && v.get<int64_t>() >= 0);
}

uint64_t need_uint(const Json& j, const char* key) {
    const Json& v = need(j, key);
    if (!is_nonneg_int(v))
        throw ParamError(std::string("field \"") + key + "\" must be a non-negative integer");
    return v.get<uint64_t>();
}

std::vector<uint64_t> need_uint_array(const Json& j, const char* key) {
    const Json& v = need(j, key);
    if (!v.is_array()) throw ParamError(std::string("field \"") + key + "\" must be an array");
    std::vector<uint64_t> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!is_nonneg_int(e))
            throw ParamError(std::string("field \"") + key +
                             "\" must contain non-negative integers");
        out.push_back(e.get<uint64_t>());
    }
    return out;
}

void check_scheme(const Json& j, const char* want) {
    const Json& v = need(j, "scheme");
    if (!v.is_string() || v.get<std::string>() != want)
        throw ParamError(std::string("field \"scheme\" must be \"") + want + "\"");
}

std::vector<size_t> need_positions(const Json& j, const char* key, size_t bound) {
    std::vector<size_t> out;
    for (uint64_t v : need_uint_array(j, key)) {
        if (v >= bound)
            throw ParamError(std::string("field \"") + key + "\" has an out-of-range position");
        out.push_back(static_cast<size_t>(v));
    }
    return out;
}

}  // namespace

Json field_to_json(const Field& f) {
    return Json{{"p", f.p()}, {"m", f.m()}, {"modulus", f.modulus()}};
}

FieldPtr field_from_json(const Json& j) {
    const uint64_t p = need_uint(j, "p");
    const uint64_t m = need_uint(j, "m");
    std::vector<uint32_t> modulus;
    for (uint64_t c : need_uint_array(j, "modulus"))
        modulus.push_back(static_cast<uint32_t>(c));
    return Field::make(static_cast<uint32_t>(p), static_cast<uint32_t>(m), modulus);
}

Json matrix_to_json(const MatrixGF& m) {
    std::vector<uint32_t> data;
    data.reserve(m.rows() * m.cols());
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c) data.push_back(m.at(r, c).code);
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

MatrixGF matrix_from_json(const Json& j, const FieldPtr& f) {
    const size_t rows = need_uint(j, "rows");
    const size_t cols = need_uint(j, "cols");
    const auto data = need_uint_array(j, "data");
    if (data.size() != rows * cols)
        throw ParamError("field \"data\" length does not match rows*cols");
    MatrixGF m(f, rows, cols);
    for (size_t i = 0; i < data.size(); ++i)
        m.at(i / cols, i % cols) = f->element(data[i]);
    return m;
}

Json vector_to_json(const VectorGF& v) {
    std::vector<uint32_t> codes(v.size());
    for (size_t i = 0; i < v.size(); ++i) codes[i] = v[i].code;
    return Json(codes);
}

VectorGF vector_from_json(const Json& j, const FieldPtr& f) {
    if (!j.is_array()) throw ParamError("vector must be an array of codes");
    VectorGF v(f, j.size());
    for (size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_unsigned()) throw ParamError("vector entries must be integers");
        v[i] = f->element(j[i].get<uint64_t>());
    }
    return v;
}

Json code_to_json(const LinearCode& c) {
    return Json{{"field", field_to_json(*c.field())},
                {"n", c.length()},
                {"gen", matrix_to_json(c.generator())}};
}

LinearCode code_from_json(const Json& j) {
    FieldPtr f = field_from_json(need(j, "field"));
    MatrixGF gen = matrix_from_json(need(j, "gen"), f);
    if (gen.cols() != need_uint(j, "n")) throw ParamError("field \"n\" does not match gen");
    return LinearCode::from_generator(gen);
}

Json grs_spec_to_json(const GrsSpec& s) {
    return Json{{"field", field_to_json(*s.field())},
                {"k", s.k},
                {"x", vector_to_json(s.x)},
                {"y", vector_to_json(s.y)}};
}

GrsSpec grs_spec_from_json(const Json& j) {
    FieldPtr f = field_from_json(need(j, "field"));
    VectorGF x = vector_from_json(need(j, "x"), f);
    VectorGF y = vector_from_json(need(j, "y"), f);
    return GrsSpec(std::move(x), std::move(y), need_uint(j, "k"));
}

// --- Wieschebrink -----------------------------------------------------------

Json wieschebrink_secret_to_json(const WieschebrinkSecretKey& sk) {
    return Json{{"scheme", "wieschebrink"},
                {"grs", grs_spec_to_json(sk.spec)},
                {"random_cols", matrix_to_json(sk.random_cols)},
                {"s", matrix_to_json(sk.s)},
                {"q_perm", matrix_to_json(sk.q_perm)},
                {"random_positions", sk.random_positions}};
}

WieschebrinkSecretKey wieschebrink_secret_from_json(const Json& j) {
    check_scheme(j, "wieschebrink");
    GrsSpec spec = grs_spec_from_json(need(j, "grs"));
    const FieldPtr& f = spec.field();
    MatrixGF cols = matrix_from_json(need(j, "random_cols"), f);
    MatrixGF s = matrix_from_json(need(j, "s"), f);
    MatrixGF q = matrix_from_json(need(j, "q_perm"), f);
    auto positions = need_positions(j, "random_positions", spec.length() + cols.cols());
    return WieschebrinkSecretKey{std::move(spec), std::move(cols), std::move(s),
                                 std::move(q), std::move(positions)};
}

Json wieschebrink_public_to_json(const FieldPtr& f, const WieschebrinkPublicKey& pk) {
    return Json{{"scheme", "wieschebrink"}, {"field", field_to_json(*f)},
                {"n", pk.n},               {"k", pk.k},
                {"r", pk.r},               {"g_pub", matrix_to_json(pk.g_pub)}};
}

std::pair<FieldPtr, WieschebrinkPublicKey> wieschebrink_public_from_json(const Json& j) {
    check_scheme(j, "wieschebrink");
    FieldPtr f = field_from_json(need(j, "field"));
    const size_t n = need_uint(j, "n");
    const size_t k = need_uint(j, "k");
    const size_t r = need_uint(j, "r");
    MatrixGF g = matrix_from_json(need(j, "g_pub"), f);
    if (g.rows() != k || g.cols() != n + r)
        throw ParamError("field \"g_pub\" shape does not match (k, n + r)");
    return {f, WieschebrinkPublicKey{std::move(g), n, k, r}};
}

// --- Bogdanov-Lee ------------------------------------------------------------

Json bl_secret_to_json(const BlSecretKey& sk) {
    return Json{{"scheme", "bl"},
                {"ell", sk.ell},
                {"k", sk.k},
                {"L", sk.L},
                {"x", vector_to_json(sk.x)},
                {"g", matrix_to_json(sk.g)},
                {"s", matrix_to_json(sk.s)},
                {"field", field_to_json(*sk.x.field())}};
}

BlSecretKey bl_secret_from_json(const Json& j) {
    check_scheme(j, "bl");
    FieldPtr f = field_from_json(need(j, "field"));
    VectorGF x = vector_from_json(need(j, "x"), f);
    MatrixGF g = matrix_from_json(need(j, "g"), f);
    MatrixGF s = matrix_from_json(need(j, "s"), f);
    const size_t ell = need_uint(j, "ell");
    const size_t k = need_uint(j, "k");
    auto L = need_positions(j, "L", x.size());
    if (L.size() != 3 * ell) throw ParamError("field \"L\" must have 3*ell entries");
    return BlSecretKey{std::move(L), std::move(x), std::move(g), std::move(s), ell, k};
}

Json bl_public_to_json(const FieldPtr& f, const BlPublicKey& pk) {
    return Json{{"scheme", "bl"}, {"field", field_to_json(*f)}, {"n", pk.n},
                {"k", pk.k},      {"ell", pk.ell},              {"p", matrix_to_json(pk.p)}};
}

std::pair<FieldPtr, BlPublicKey> bl_public_from_json(const Json& j) {
    check_scheme(j, "bl");
    FieldPtr f = field_from_json(need(j, "field"));
    const size_t n = need_uint(j, "n");
    const size_t k = need_uint(j, "k");
    const size_t ell = need_uint(j, "ell");
    MatrixGF p = matrix_from_json(need(j, "p"), f);
    if (p.rows() != k || p.cols() != n)
        throw ParamError("field \"p\" shape does not match (k, n)");
    return {f, BlPublicKey{std::move(p), n, k, ell}};
}

// --- BBCRS -------------------------------------------------------------------

Json bbcrs_secret_to_json(const BbcrsSecretKey& sk) {
    return Json{{"scheme", "bbcrs"},
                {"grs", grs_spec_to_json(sk.spec)},
                {"s", matrix_to_json(sk.s)},
                {"pi", matrix_to_json(sk.pi)},
                {"alpha", vector_to_json(sk.alpha)},
                {"beta", vector_to_json(sk.beta)}};
}

BbcrsSecretKey bbcrs_secret_from_json(const Json& j) {
    check_scheme(j, "bbcrs");
    GrsSpec spec = grs_spec_from_json(need(j, "grs"));
    const FieldPtr& f = spec.field();
    MatrixGF s = matrix_from_json(need(j, "s"), f);
    MatrixGF pi = matrix_from_json(need(j, "pi"), f);
    VectorGF alpha = vector_from_json(need(j, "alpha"), f);
    VectorGF beta = vector_from_json(need(j, "beta"), f);
    return BbcrsSecretKey{std::move(spec), std::move(s), std::move(pi), std::move(alpha),
                          std::move(beta)};
}

Json bbcrs_public_to_json(const FieldPtr& f, const BbcrsPublicKey& pk) {
    return Json{{"scheme", "bbcrs"}, {"field", field_to_json(*f)}, {"n", pk.n},
                {"k", pk.k},         {"g_pub", matrix_to_json(pk.g_pub)}};
}

std::pair<FieldPtr, BbcrsPublicKey> bbcrs_public_from_json(const Json& j) {
    check_scheme(j, "bbcrs");
    FieldPtr f = field_from_json(need(j, "field"));
    const size_t n = need_uint(j, "n");
    const size_t k = need_uint(j, "k");
    MatrixGF g = matrix_from_json(need(j, "g_pub"), f);
    if (g.rows() != k || g.cols() != n)
        throw ParamError("field \"g_pub\" shape does not match (k, n)");
    return {f, BbcrsPublicKey{std::move(g), n, k}};
}

// --- ciphertexts and cracks --------------------------------------------------

Json ciphertext_to_json(const VectorGF& ct) { return Json{{"c", vector_to_json(ct)}}; }

VectorGF ciphertext_from_json(const Json& j, const FieldPtr& f) {
    return vector_from_json(need(j, "c"), f);
}

Json wieschebrink_crack_to_json(const WieschebrinkCrack& c) {
    return Json{{"scheme", "wieschebrink"},
                {"random_positions", c.random_positions},
                {"recovered_spec", grs_spec_to_json(c.recovered_spec)}};
}

WieschebrinkCrack wieschebrink_crack_from_json(const Json& j) {
    check_scheme(j, "wieschebrink");
    GrsSpec spec = grs_spec_from_json(need(j, "recovered_spec"));
    auto positions = need_positions(j, "random_positions",
                                    spec.length() + need(j, "random_positions").size());
    return WieschebrinkCrack{std::move(positions), std::move(spec)};
}

Json bl_crack_to_json(const BlCrack& c) {
    return Json{{"scheme", "bl"}, {"L", c.L}};
}

BlCrack bl_crack_from_json(const Json& j) {
    check_scheme(j, "bl");
    std::vector<size_t> L;
    for (uint64_t v : need_uint_array(j, "L")) L.push_back(static_cast<size_t>(v));
    return BlCrack{std::move(L)};
}

Json bbcrs_crack_to_json(const BbcrsCrack& c) {
    return Json{{"scheme", "bbcrs"},
                {"c_spec", grs_spec_to_json(c.c_spec)},
                {"a0", vector_to_json(c.a0)},
                {"lambda0", vector_to_json(c.lambda0)},
                {"dual_path", c.dual_path}};
}

BbcrsCrack bbcrs_crack_from_json(const Json& j) {
    check_scheme(j, "bbcrs");
    GrsSpec spec = grs_spec_from_json(need(j, "c_spec"));
    const FieldPtr& f = spec.field();
    VectorGF a0 = vector_from_json(need(j, "a0"), f);
    VectorGF lambda0 = vector_from_json(need(j, "lambda0"), f);
    const Json& dp = need(j, "dual_path");
    if (!dp.is_boolean()) throw ParamError("field \"dual_path\" must be a boolean");
    return BbcrsCrack{std::move(spec), std::move(a0), std::move(lambda0), dp.get<bool>()};
}

void save_json(const std::string& path, const Json& j) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ParamError("cannot open \"" + tmp + "\" for writing");
        out << j.dump(2) << '\n';
        if (!out) throw ParamError("write failed for \"" + tmp + "\"");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw ParamError("cannot move \"" + tmp + "\" into place");
}

Json load_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParamError("cannot open \"" + path + "\"");
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw ParamError("malformed JSON in \"" + path + "\": " + e.what());
    }
    return j;
}

}  // namespace sqcode
