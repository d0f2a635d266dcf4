#include "sqcode/field.hpp"

#include <algorithm>
#include <numeric>

namespace sqcode {
namespace {

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// --- bootstrap polynomial arithmetic over F_p (coefficients low-to-high) ---

using Pp = std::vector<uint32_t>;

Pp pp_trim(Pp a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Pp pp_mulmod(const Pp& a, const Pp& b, const Pp& f, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint64_t> prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + uint64_t(a[i]) * b[j]) % p;
    // reduce by monic f of degree deg
    const size_t deg = f.size() - 1;
    for (size_t i = prod.size(); i-- > deg;) {
        const uint64_t c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (size_t j = 0; j < deg; ++j) {
            uint64_t sub = (c * f[j]) % p;
            prod[i - deg + j] = (prod[i - deg + j] + p - sub) % p;
        }
    }
    prod.resize(deg);
    Pp out(prod.begin(), prod.end());
    return pp_trim(out);
}

Pp pp_powmod(Pp base, uint64_t e, const Pp& f, uint32_t p) {
    Pp result{1};
    while (e) {
        if (e & 1) result = pp_mulmod(result, base, f, p);
        base = pp_mulmod(base, base, f, p);
        e >>= 1;
    }
    return result;
}

Pp pp_mod(Pp a, const Pp& b, uint32_t p) {
    a = pp_trim(a);
    const Pp bt = pp_trim(b);
    const size_t db = bt.size() - 1;
    // inverse of leading coefficient mod p
    uint32_t lead_inv = 1;
    for (uint32_t c = 1; c < p; ++c)
        if ((uint64_t(c) * bt.back()) % p == 1) {
            lead_inv = c;
            break;
        }
    while (a.size() > db) {
        const uint64_t c = (uint64_t(a.back()) * lead_inv) % p;
        const size_t shift = a.size() - 1 - db;
        for (size_t j = 0; j < bt.size(); ++j) {
            uint64_t sub = (c * bt[j]) % p;
            a[shift + j] = static_cast<uint32_t>((a[shift + j] + p - sub) % p);
        }
        a = pp_trim(a);
        if (a.empty()) break;
    }
    return a;
}

Pp pp_gcd(Pp a, Pp b, uint32_t p) {
    a = pp_trim(std::move(a));
    b = pp_trim(std::move(b));
    while (!b.empty()) {
        Pp r = pp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Rabin test: f (monic, degree m) is irreducible over F_p iff
// x^(p^m) == x mod f and gcd(x^(p^(m/d)) - x, f) = 1 for prime d | m.
bool pp_irreducible(const Pp& f, uint32_t p) {
    const size_t m = f.size() - 1;
    if (m == 0) return false;
    const Pp x{0, 1};
    auto x_pow_p_iter = [&](size_t times) {
        Pp t = x;
        for (size_t i = 0; i < times; ++i) {
            // t = t^p mod f
            Pp r = pp_powmod(t, p, f, p);
            t = std::move(r);
        }
        return t;
    };
    if (pp_trim(x_pow_p_iter(m)) != pp_trim(x)) return false;
    for (uint64_t d : prime_factors(m)) {
        Pp t = x_pow_p_iter(m / d);
        // t - x
        Pp diff = t;
        diff.resize(std::max<size_t>(diff.size(), 2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        diff = pp_trim(diff);
        Pp g = pp_gcd(diff, f, p);
        if (g.size() > 1) return false;
    }
    return true;
}

// Primitive polynomials over GF(2), bit i = coefficient of x^i. Fixed so
// that default-modulus fields (and therefore key files) are identical
// across runs and versions.
constexpr uint32_t kGf2Primitive[17] = {
    0,
    0b11,                 // x + 1
    0b111,                // x^2 + x + 1
    0b1011,               // x^3 + x + 1
    0b10011,              // x^4 + x + 1
    0b100101,             // x^5 + x^2 + 1
    0b1000011,            // x^6 + x + 1
    0b10000011,           // x^7 + x + 1
    0b100011101,          // x^8 + x^4 + x^3 + x^2 + 1
    0b1000010001,         // x^9 + x^4 + 1
    0b10000001001,        // x^10 + x^3 + 1
    0b100000000101,       // x^11 + x^2 + 1
    0b1000001010011,      // x^12 + x^6 + x^4 + x + 1
    0b10000000011011,     // x^13 + x^4 + x^3 + x + 1
    0b100010001000011,    // x^14 + x^10 + x^6 + x + 1
    0b1000000000000011,   // x^15 + x + 1
    0b10001000000001011,  // x^16 + x^12 + x^3 + x + 1
};

Pp default_modulus(uint32_t p, uint32_t m) {
    if (m == 1) return Pp{0, 1};  // placeholder x; prime fields reduce mod p directly
    if (p == 2 && m <= 16) {
        Pp f(m + 1, 0);
        for (uint32_t i = 0; i <= m; ++i) f[i] = (kGf2Primitive[m] >> i) & 1u;
        return f;
    }
    // lexicographically smallest monic irreducible of degree m over F_p,
    // ordered by the base-p code of the non-leading coefficients
    uint64_t span = 1;
    for (uint32_t i = 0; i < m; ++i) span *= p;
    for (uint64_t code = 0; code < span; ++code) {
        Pp f(m + 1, 0);
        uint64_t c = code;
        for (uint32_t i = 0; i < m; ++i) {
            f[i] = static_cast<uint32_t>(c % p);
            c /= p;
        }
        f[m] = 1;
        if (pp_irreducible(f, p)) return f;
    }
    throw ParamError("no irreducible modulus found");  // unreachable for valid p, m
}

}  // namespace

Field::Field(uint32_t p, uint32_t m, std::vector<uint32_t> modulus)
    : p_(p), m_(m), modulus_(std::move(modulus)) {
    if (!is_prime(p_)) throw ParamError("field characteristic must be prime");
    if (m_ < 1) throw ParamError("extension degree must be >= 1");
    uint64_t q = 1;
    for (uint32_t i = 0; i < m_; ++i) {
        q *= p_;
        if (q > (1u << 20)) throw ParamError("field too large (q > 2^20 unsupported)");
    }
    q_ = static_cast<uint32_t>(q);

    if (modulus_.empty()) {
        modulus_ = default_modulus(p_, m_);
    } else {
        if (modulus_.size() != m_ + 1) throw ParamError("modulus degree must equal m");
        for (uint32_t c : modulus_)
            if (c >= p_) throw ParamError("modulus coefficient out of range");
        if (modulus_.back() != 1) throw ParamError("modulus must be monic");
        if (m_ > 1 && !pp_irreducible(modulus_, p_))
            throw ParamError("modulus is reducible over F_p");
    }
    xor_add_ = (p_ == 2);
    if (q_ <= (1u << 16)) build_tables();
}

FieldPtr Field::make(uint32_t p, uint32_t m, std::vector<uint32_t> modulus) {
    return FieldPtr(new Field(p, m, std::move(modulus)));
}

FieldPtr Field::make_q(uint32_t q) {
    if (q < 2) throw ParamError("q must be >= 2");
    for (uint32_t p = 2; uint64_t(p) * p <= q; ++p) {
        if (q % p == 0) {
            uint32_t m = 0;
            uint32_t rest = q;
            while (rest % p == 0) {
                rest /= p;
                ++m;
            }
            if (rest != 1) throw ParamError("q is not a prime power");
            return make(p, m);
        }
    }
    return make(q, 1);  // q itself prime
}

Fe Field::add_digits(Fe a, Fe b, bool subtract) const {
    uint32_t r = 0, scale = 1, x = a.code, y = b.code;
    for (uint32_t i = 0; i < m_; ++i) {
        uint32_t da = x % p_, db = y % p_;
        uint32_t d = subtract ? (da >= db ? da - db : da + p_ - db)
                              : (da + db >= p_ ? da + db - p_ : da + db);
        r += d * scale;
        scale *= p_;
        x /= p_;
        y /= p_;
    }
    return Fe{r};
}

Fe Field::mul_generic(Fe a, Fe b) const {
    if (m_ == 1) return Fe{static_cast<uint32_t>((uint64_t(a.code) * b.code) % p_)};
    // schoolbook product of the digit vectors, reduced by the modulus
    std::vector<uint32_t> da(m_), db(m_);
    uint32_t x = a.code, y = b.code;
    for (uint32_t i = 0; i < m_; ++i) {
        da[i] = x % p_;
        db[i] = y % p_;
        x /= p_;
        y /= p_;
    }
    std::vector<uint64_t> prod(2 * m_ - 1, 0);
    for (uint32_t i = 0; i < m_; ++i)
        for (uint32_t j = 0; j < m_; ++j)
            prod[i + j] = (prod[i + j] + uint64_t(da[i]) * db[j]) % p_;
    for (size_t i = prod.size(); i-- > m_;) {
        const uint64_t c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (uint32_t j = 0; j < m_; ++j) {
            uint64_t sub = (c * modulus_[j]) % p_;
            prod[i - m_ + j] = (prod[i - m_ + j] + p_ - sub) % p_;
        }
    }
    uint32_t r = 0, scale = 1;
    for (uint32_t i = 0; i < m_; ++i) {
        r += static_cast<uint32_t>(prod[i]) * scale;
        scale *= p_;
    }
    return Fe{r};
}

Fe Field::inv_generic(Fe a) const {
    if (a.code == 0) throw ParamError("division by zero in F_q");
    // a^(q-2) via the generic product
    uint64_t e = q_ - 2;
    Fe result = one(), base = a;
    while (e) {
        if (e & 1) result = mul_generic(result, base);
        base = mul_generic(base, base);
        e >>= 1;
    }
    return result;
}

Fe Field::pow(Fe a, uint64_t e) const {
    if (a.code == 0) return e == 0 ? one() : zero();
    if (tables_built_) {
        const uint64_t l = (uint64_t(log_[a.code]) * (e % (q_ - 1))) % (q_ - 1);
        return Fe{exp_[l]};
    }
    Fe result = one(), base = a;
    while (e) {
        if (e & 1) result = mul_generic(result, base);
        base = mul_generic(base, base);
        e >>= 1;
    }
    return result;
}

std::vector<Fe> Field::enumerate() const {
    std::vector<Fe> out(q_);
    for (uint32_t i = 0; i < q_; ++i) out[i] = Fe{i};
    return out;
}

void Field::build_tables() {
    const auto factors = prime_factors(q_ - 1);
    auto pow_gen = [&](Fe a, uint64_t e) {
        Fe result = one(), base = a;
        while (e) {
            if (e & 1) result = mul_generic(result, base);
            base = mul_generic(base, base);
            e >>= 1;
        }
        return result;
    };
    uint32_t g = 0;
    for (uint32_t cand = q_ == 2 ? 1 : 2; cand < q_; ++cand) {
        bool ok = true;
        for (uint64_t f : factors) {
            if (pow_gen(Fe{cand}, (q_ - 1) / f).code == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            g = cand;
            break;
        }
    }
    if (g == 0) throw Error("no generator found");  // cannot happen for a field
    generator_ = g;
    log_.assign(q_, 0);
    exp_.assign(size_t{2} * (q_ - 1), 0);
    Fe cur = one();
    for (uint32_t i = 0; i < q_ - 1; ++i) {
        exp_[i] = cur.code;
        exp_[i + q_ - 1] = cur.code;
        log_[cur.code] = i;
        cur = mul_generic(cur, Fe{g});
    }
    tables_built_ = true;
}

std::vector<size_t> Rng::sample_distinct(size_t n, size_t count) {
    if (count > n) throw ParamError("sample_distinct: count > n");
    std::vector<size_t> pool(n);
    std::iota(pool.begin(), pool.end(), size_t{0});
    for (size_t i = 0; i < count; ++i) {
        const size_t j = i + static_cast<size_t>(below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace sqcode
