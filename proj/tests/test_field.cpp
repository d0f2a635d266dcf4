#include <doctest.h>

#include <cmath>
#include <map>

#include "sqcode/field.hpp"

using namespace sqcode;

TEST_SUITE("field") {

TEST_CASE("prime field basics") {
    auto f7 = Field::make(7, 1);
    CHECK(f7->q() == 7);
    CHECK(f7->add(Fe{3}, Fe{5}) == Fe{1});
    CHECK(f7->add(Fe{0}, Fe{4}) == Fe{4});
    CHECK(f7->mul(Fe{3}, Fe{5}) == Fe{1});
    CHECK(f7->inv(Fe{3}) == Fe{5});
    CHECK(f7->pow(Fe{3}, 6) == Fe{1});
    CHECK(f7->pow(Fe{3}, 2) == Fe{2});
    CHECK(f7->sub(Fe{2}, Fe{5}) == Fe{4});
    CHECK(f7->neg(Fe{3}) == Fe{4});
}

TEST_CASE("gf8 with x^3 + x + 1") {
    auto f8 = Field::make(2, 3, {1, 1, 0, 1});
    CHECK(f8->add(Fe{5}, Fe{5}) == Fe{0});  // characteristic 2
    CHECK(f8->mul(Fe{2}, Fe{4}) == Fe{3});  // x * x^2 = x^3 = x + 1
    CHECK(f8->inv(Fe{1}) == Fe{1});
    for (uint32_t a = 0; a < 8; ++a) {
        CHECK(f8->pow(Fe{a}, 8) == Fe{a});  // Frobenius fixed point of the full power map
    }
}

TEST_CASE("identity laws and 0^0") {
    for (uint32_t q : {4u, 9u, 31u, 128u}) {
        auto f = Field::make_q(q);
        for (uint32_t a = 0; a < q; ++a) {
            CHECK(f->mul(Fe{a}, f->one()) == Fe{a});
            CHECK(f->add(Fe{a}, f->zero()) == Fe{a});
        }
        CHECK(f->pow(f->zero(), 0) == f->one());
    }
}

TEST_CASE("inverse round trip is exhaustive for desk-scale q") {
    for (uint32_t q : {7u, 8u, 16u, 64u, 128u, 251u, 256u, 307u, 512u}) {
        auto f = Field::make_q(q);
        for (uint32_t a = 1; a < q; ++a) {
            CHECK(f->mul(Fe{a}, f->inv(Fe{a})) == f->one());
        }
        CHECK_THROWS_AS(f->inv(f->zero()), ParamError);
    }
}

TEST_CASE("field axioms hold exhaustively") {
    // full q^3 associativity/distributivity sweeps over every field size
    // the toolkit targets
    for (uint32_t q : {2u, 4u, 7u, 8u, 9u, 16u, 27u, 31u, 64u, 128u, 251u, 256u, 307u, 512u}) {
        CAPTURE(q);
        auto f = Field::make_q(q);
        bool assoc_add = true, assoc_mul = true, distrib = true, comm = true;
        for (uint32_t a = 0; a < q; ++a) {
            for (uint32_t b = 0; b < q; ++b) {
                if (f->add(Fe{a}, Fe{b}) != f->add(Fe{b}, Fe{a})) comm = false;
                if (f->mul(Fe{a}, Fe{b}) != f->mul(Fe{b}, Fe{a})) comm = false;
                for (uint32_t c = 0; c < q; ++c) {
                    const Fe A{a}, B{b}, C{c};
                    if (f->add(f->add(A, B), C) != f->add(A, f->add(B, C))) assoc_add = false;
                    if (f->mul(f->mul(A, B), C) != f->mul(A, f->mul(B, C))) assoc_mul = false;
                    if (f->mul(A, f->add(B, C)) != f->add(f->mul(A, B), f->mul(A, C)))
                        distrib = false;
                }
                if (!(assoc_add && assoc_mul && distrib && comm)) break;
            }
            if (!(assoc_add && assoc_mul && distrib && comm)) break;
        }
        CHECK(assoc_add);
        CHECK(assoc_mul);
        CHECK(distrib);
        CHECK(comm);
    }
}

TEST_CASE("subtraction matches addition of the negation") {
    for (uint32_t q : {9u, 27u, 49u}) {
        auto f = Field::make_q(q);
        for (uint32_t a = 0; a < q; ++a)
            for (uint32_t b = 0; b < q; ++b)
                CHECK(f->sub(Fe{a}, Fe{b}) == f->add(Fe{a}, f->neg(Fe{b})));
    }
}

TEST_CASE("frobenius: a^q = a for all a") {
    for (uint32_t q : {16u, 81u, 125u, 512u}) {
        auto f = Field::make_q(q);
        for (uint32_t a = 0; a < q; ++a) CHECK(f->pow(Fe{a}, q) == Fe{a});
    }
}

TEST_CASE("table and generic paths agree") {
    for (uint32_t p : {2u, 7u, 31u, 251u}) {
        auto f = Field::make(p, 1);
        for (uint32_t a = 0; a < p; ++a) {
            for (uint32_t b = 0; b < p; ++b) {
                CHECK(f->mul(Fe{a}, Fe{b}) == f->mul_generic(Fe{a}, Fe{b}));
            }
            if (a) CHECK(f->inv(Fe{a}) == f->inv_generic(Fe{a}));
        }
    }
    for (uint32_t q : {64u, 243u}) {
        auto f = Field::make_q(q);
        for (uint32_t a = 0; a < q; ++a)
            for (uint32_t b = 0; b < q; ++b)
                CHECK(f->mul(Fe{a}, Fe{b}) == f->mul_generic(Fe{a}, Fe{b}));
    }
}

TEST_CASE("element validation") {
    auto f = Field::make_q(16);
    CHECK_THROWS_AS(f->element(16), ParamError);
    CHECK_THROWS_AS(f->element(100), ParamError);
    CHECK(f->element(15) == Fe{15});
}

TEST_CASE("modulus validation") {
    CHECK_THROWS_AS(Field::make(4, 1), ParamError);               // not prime
    CHECK_THROWS_AS(Field::make(2, 2, {1, 0, 1}), ParamError);    // x^2+1 reducible
    CHECK_THROWS_AS(Field::make(2, 2, {1, 1, 2}), ParamError);    // coefficient range
    CHECK_THROWS_AS(Field::make(2, 2, {1, 1}), ParamError);       // wrong degree
    CHECK_NOTHROW(Field::make(2, 2, {1, 1, 1}));
    CHECK_NOTHROW(Field::make(3, 2, {1, 0, 1}));                  // x^2+1 irreducible mod 3
}

TEST_CASE("built-in moduli are primitive: tables use x as generator check") {
    // the defaults for p = 2 are primitive polynomials, so x itself must
    // have full order; verified through the power map
    for (uint32_t m = 2; m <= 12; ++m) {
        auto f = Field::make(2, m);
        const uint32_t q = f->q();
        CHECK(f->pow(Fe{2}, q - 1) == f->one());
        bool full_order = true;
        for (uint32_t d = 2; d < q - 1; ++d) {
            if ((q - 1) % d == 0 && f->pow(Fe{2}, d) == f->one()) {
                full_order = false;
                break;
            }
        }
        CHECK(full_order);
    }
}

TEST_CASE("enumerate and deterministic sampling") {
    auto f4 = Field::make_q(4);
    auto all = f4->enumerate();
    REQUIRE(all.size() == 4);
    for (uint32_t i = 0; i < 4; ++i) CHECK(all[i] == Fe{i});

    auto f7 = Field::make_q(7);
    Rng r1(42), r2(42);
    for (int i = 0; i < 100; ++i) CHECK(f7->sample(r1) == f7->sample(r2));
}

TEST_CASE("uniformity: 10^4 draws within 5 sigma per value") {
    auto f7 = Field::make_q(7);
    Rng rng(2024);
    std::map<uint32_t, int> counts;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) ++counts[f7->sample(rng).code];
    const double mean = draws / 7.0;
    const double sigma = std::sqrt(draws * (1.0 / 7) * (6.0 / 7));
    for (auto [code, count] : counts) {
        CAPTURE(code);
        CHECK(std::abs(count - mean) <= 5 * sigma);
    }
    CHECK(counts.size() == 7);
}

TEST_CASE("large fields run on the table-free path") {
    auto f = Field::make(2, 17);  // q = 131072: above the table threshold
    CHECK_FALSE(f->has_tables());
    CHECK(f->q() == 131072u);
    Rng rng(3);
    for (int it = 0; it < 200; ++it) {
        const Fe a = f->sample(rng), b = f->sample(rng), c = f->sample(rng);
        CHECK(f->mul(a, b) == f->mul(b, a));
        CHECK(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
        CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
        if (a.code) {
            CHECK(f->mul(a, f->inv(a)) == f->one());
            CHECK(f->pow(a, f->q() - 1) == f->one());
        }
    }
    CHECK_THROWS_AS(Field::make(2, 21), ParamError);  // q > 2^20 unsupported
}

TEST_CASE("make_q factors prime powers") {
    auto f = Field::make_q(343);
    CHECK(f->p() == 7);
    CHECK(f->m() == 3);
    CHECK_THROWS_AS(Field::make_q(12), ParamError);
    CHECK_THROWS_AS(Field::make_q(0), ParamError);
}

}  // TEST_SUITE
