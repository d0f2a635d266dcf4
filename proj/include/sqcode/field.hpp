#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "sqcode/errors.hpp"
#include "sqcode/rng.hpp"

namespace sqcode {

// An element of F_q, stored as its integer code in [0, q): the value
// sum c_i * p^i where (c_0 .. c_{m-1}) are the coefficients of the
// polynomial representative. Code 0 is the additive identity, code 1 the
// multiplicative one. The encoding is the on-disk format as well.
struct Fe {
    uint32_t code = 0;
    friend constexpr bool operator==(const Fe&, const Fe&) = default;
    friend constexpr auto operator<=>(const Fe&, const Fe&) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// F_q with q = p^m, p prime, m >= 1. Immutable after construction and
// shareable across threads; all operations are pure.
//
// For q <= 2^16 multiplication and inversion go through log/antilog
// tables built on a generator found at construction time; above that the
// generic polynomial path is used directly.
class Field {
public:
    // modulus: monic irreducible polynomial over F_p of degree m,
    // coefficients low-to-high, each in [0, p). Empty picks the built-in
    // default for (p, m): a fixed primitive-polynomial table for p = 2,
    // m <= 16, and the lexicographically smallest irreducible polynomial
    // otherwise. User-supplied moduli are irreducibility-checked.
    static FieldPtr make(uint32_t p, uint32_t m, std::vector<uint32_t> modulus = {});

    // Factors q into p^m and uses the default modulus.
    static FieldPtr make_q(uint32_t q);

    uint32_t p() const { return p_; }
    uint32_t m() const { return m_; }
    uint32_t q() const { return q_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    Fe zero() const { return Fe{0}; }
    Fe one() const { return Fe{1}; }

    // Range-checked constructor for untrusted codes.
    Fe element(uint64_t code) const {
        if (code >= q_) throw ParamError("field element code out of range");
        return Fe{static_cast<uint32_t>(code)};
    }

    Fe add(Fe a, Fe b) const {
        if (xor_add_) return Fe{a.code ^ b.code};
        if (m_ == 1) {
            uint32_t s = a.code + b.code;
            return Fe{s >= p_ ? s - p_ : s};
        }
        return add_digits(a, b, false);
    }

    Fe sub(Fe a, Fe b) const {
        if (xor_add_) return Fe{a.code ^ b.code};
        if (m_ == 1) {
            return Fe{a.code >= b.code ? a.code - b.code : a.code + p_ - b.code};
        }
        return add_digits(a, b, true);
    }

    Fe neg(Fe a) const { return sub(zero(), a); }

    Fe mul(Fe a, Fe b) const {
        if (!tables_built_) return mul_generic(a, b);
        if (a.code == 0 || b.code == 0) return Fe{0};
        return Fe{exp_[log_[a.code] + log_[b.code]]};
    }

    Fe inv(Fe a) const {
        if (a.code == 0) throw ParamError("division by zero in F_q");
        if (!tables_built_) return inv_generic(a);
        return Fe{exp_[q_ - 1 - log_[a.code]]};
    }

    Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }

    // Square-and-multiply; 0^0 = 1 by convention.
    Fe pow(Fe a, uint64_t e) const;

    bool is_zero(Fe a) const { return a.code == 0; }

    // All q elements in code order 0 .. q-1.
    std::vector<Fe> enumerate() const;

    Fe sample(Rng& rng) const { return Fe{static_cast<uint32_t>(rng.below(q_))}; }
    Fe sample_nonzero(Rng& rng) const {
        return Fe{static_cast<uint32_t>(1 + rng.below(q_ - 1))};
    }

    // Table-free reference arithmetic; the table path is tested against it.
    Fe mul_generic(Fe a, Fe b) const;
    Fe inv_generic(Fe a) const;

    bool has_tables() const { return tables_built_; }
    Fe table_generator() const { return Fe{generator_}; }

    bool same_as(const Field& other) const {
        return p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_;
    }

private:
    Field(uint32_t p, uint32_t m, std::vector<uint32_t> modulus);

    Fe add_digits(Fe a, Fe b, bool subtract) const;
    void build_tables();

    uint32_t p_ = 0;
    uint32_t m_ = 0;
    uint32_t q_ = 0;
    std::vector<uint32_t> modulus_;  // degree m, monic, low-to-high
    bool xor_add_ = false;
    bool tables_built_ = false;
    uint32_t generator_ = 0;
    std::vector<uint32_t> log_;  // index: element code, value in [0, q-1)
    std::vector<uint32_t> exp_;  // length 2(q-1), doubled to skip the mod
};

// Shared-field check used at every cross-object boundary.
inline void require_same_field(const FieldPtr& a, const FieldPtr& b) {
    if (a.get() == b.get()) return;
    if (!a || !b || !a->same_as(*b)) throw ParamError("field mismatch");
}

}  // namespace sqcode
