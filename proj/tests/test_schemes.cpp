#include <doctest.h>

#include "oracles.hpp"
#include "sqcode/schemes.hpp"

using namespace sqcode;

TEST_SUITE("schemes") {

TEST_CASE("wieschebrink keygen shape and determinism") {
    auto f = Field::make_q(31);
    Rng rng(1);
    auto keys = wieschebrink_keygen(f, 20, 5, 3, rng);
    CHECK(keys.pub.g_pub.rows() == 5);
    CHECK(keys.pub.g_pub.cols() == 23);
    CHECK(keys.secret.random_positions.size() == 3);
    CHECK(rank(keys.pub.g_pub) == 5);

    Rng rng2(1);
    auto again = wieschebrink_keygen(f, 20, 5, 3, rng2);
    CHECK(again.pub.g_pub == keys.pub.g_pub);
    CHECK(again.secret.q_perm == keys.secret.q_perm);

    // row space of G_pub Q equals row space of [G | C]
    const MatrixGF lhs = keys.pub.g_pub.mul(keys.secret.q_perm);
    const MatrixGF rhs = grs_generator(keys.secret.spec).hstack(keys.secret.random_cols);
    CHECK(code_equal(LinearCode::from_generator(lhs), LinearCode::from_generator(rhs)));

    // ground-truth positions really carry the random columns: puncturing
    // there leaves a GRS-dimensional square
    auto pub_code = LinearCode::from_generator(keys.pub.g_pub);
    auto grs_part = puncture(pub_code, keys.secret.random_positions);
    CHECK(square_dim(grs_part) == 2 * 5 - 1);
}

TEST_CASE("wieschebrink round trips") {
    SUBCASE("zero errors is exact") {
        auto f = Field::make_q(31);
        Rng rng(2);
        auto keys = wieschebrink_keygen(f, 20, 5, 3, rng);
        auto msg = random_vector(f, 5, rng);
        // encrypt without noise: plain generator action
        auto ct = keys.pub.g_pub.apply_left(msg);
        auto dec = wieschebrink_decrypt(keys.secret, ct);
        REQUIRE(dec.has_value());
        CHECK(*dec == msg);
    }
    SUBCASE("full-weight errors round trip over 200 seeds at (64, 56, 20, 6)") {
        auto f = Field::make_q(64);
        Rng kg(55);
        auto keys = wieschebrink_keygen(f, 56, 20, 6, kg);
        for (uint64_t seed = 0; seed < 200; ++seed) {
            Rng rng(seed);
            auto msg = random_vector(f, 20, rng);
            auto ct = wieschebrink_encrypt(keys.pub, msg, rng);
            auto dec = wieschebrink_decrypt(keys.secret, ct);
            REQUIRE(dec.has_value());
            CHECK(*dec == msg);
        }
    }
    SUBCASE("tampering beyond capacity is detected by re-encryption distance") {
        auto f = Field::make_q(16);
        Rng rng(3);
        auto keys = wieschebrink_keygen(f, 14, 4, 2, rng);
        const size_t t = (14 - 4) / 2;
        size_t detected = 0, trials = 0;
        for (uint64_t seed = 0; seed < 50; ++seed) {
            Rng r2(seed);
            auto msg = random_vector(f, 4, r2);
            auto clean = keys.pub.g_pub.apply_left(msg);
            VectorGF noisy = clean;
            for (size_t pos : r2.sample_distinct(16, t + 3))
                noisy[pos] = f->add(noisy[pos], f->sample_nonzero(r2));
            auto dec = wieschebrink_decrypt(keys.secret, noisy);
            ++trials;
            if (!dec) {
                ++detected;
            } else if (*dec != msg) {
                // wrong message: visible as large re-encryption distance
                auto reenc = keys.pub.g_pub.apply_left(*dec);
                CHECK(reenc.hamming_distance(noisy) > t);
                ++detected;
            }
        }
        CHECK(trials == 50);
        CHECK(detected > 0);
    }
}

TEST_CASE("bl keygen structure") {
    auto f = Field::make_q(257);
    Rng rng(4);
    auto keys = bl_keygen(f, 200, 20, 8, rng);
    CHECK(keys.secret.L.size() == 24);
    SUBCASE("masked columns vanish above row ell") {
        for (size_t i : keys.secret.L)
            for (size_t j = 8; j < 20; ++j) CHECK(keys.secret.g.at(j, i) == Fe{0});
    }
    SUBCASE("rank is k across 50 seeds") {
        for (uint64_t seed = 0; seed < 50; ++seed) {
            Rng r2(seed);
            auto k2 = bl_keygen(f, 200, 20, 8, r2);
            CHECK(rank(k2.secret.g) == 20);
            CHECK(code_equal(LinearCode::from_generator(k2.pub.p),
                             LinearCode::from_generator(k2.secret.g)));
        }
    }
    SUBCASE("parameter validation") {
        Rng r3(1);
        CHECK_THROWS_AS(bl_keygen(f, 200, 20, 0, r3), ParamError);
        CHECK_THROWS_AS(bl_keygen(f, 10, 4, 3, r3), ParamError);   // 3*ell !< n fails n-3l>=k
        CHECK_THROWS_AS(bl_keygen(f, 300, 20, 8, r3), ParamError); // n >= q
    }
}

TEST_CASE("bl public square never fills the space") {
    // the whole reason the scheme is attackable: the square of the public
    // code is far from F_q^n even though (k+1 choose 2) exceeds n
    auto f = Field::make_q(257);
    for (uint64_t seed = 0; seed < 5; ++seed) {
        Rng rng(seed);
        auto keys = bl_keygen(f, 200, 20, 8, rng);
        const size_t d = square_dim(LinearCode::from_generator(keys.pub.p));
        CHECK(20 * 21 / 2 > 200);  // a random code of this shape would saturate
        CHECK(d < 200);
    }
}

TEST_CASE("bl round trips") {
    auto f = Field::make_q(257);
    Rng kg(6);
    auto keys = bl_keygen(f, 200, 20, 8, kg);
    SUBCASE("noiseless encryption decrypts") {
        Rng rng(7);
        for (int it = 0; it < 50; ++it) {
            const Fe m = f->sample(rng);
            auto ct = bl_encrypt(keys.pub, m, 0.0, rng);
            CHECK(bl_decrypt(keys.secret, ct) == m);
        }
    }
    SUBCASE("low-noise: at least 997 of 1000 round trips") {
        // (1 - eta)^{3 ell} >= 0.999 for eta = 4e-5 and |L| = 24
        Rng rng(8);
        const double eta = 4e-5;
        int good = 0;
        for (int it = 0; it < 1000; ++it) {
            const Fe m = f->sample(rng);
            auto ct = bl_encrypt(keys.pub, m, eta, rng);
            if (bl_decrypt(keys.secret, ct) == m) ++good;
        }
        CHECK(good >= 997);
    }
    SUBCASE("additive homomorphism under clean noise") {
        Rng rng(9);
        int agree = 0, total = 0;
        for (int it = 0; it < 200; ++it) {
            const Fe m1 = f->sample(rng), m2 = f->sample(rng);
            auto c1 = bl_encrypt(keys.pub, m1, 0.002, rng);
            auto c2 = bl_encrypt(keys.pub, m2, 0.002, rng);
            ++total;
            if (bl_decrypt(keys.secret, c1.add(c2)) == f->add(m1, m2)) ++agree;
        }
        // failures only when some error hits L; rate stays near (1-eta)^{2|L|}
        CHECK(agree >= total * 85 / 100);
    }
    SUBCASE("failure law matches the channel: errors clean on L decrypt") {
        Rng rng(10);
        for (int it = 0; it < 300; ++it) {
            const Fe m = f->sample(rng);
            // plant errors only off L
            VectorGF x = random_vector(f, 20, rng);
            VectorGF ct = keys.pub.p.apply_left(x);
            for (size_t i = 0; i < 200; ++i) ct[i] = f->add(ct[i], m);
            for (int e = 0; e < 10; ++e) {
                size_t pos;
                do {
                    pos = rng.below(200);
                } while (std::binary_search(keys.secret.L.begin(), keys.secret.L.end(), pos));
                ct[pos] = f->add(ct[pos], f->sample_nonzero(rng));
            }
            CHECK(bl_decrypt(keys.secret, ct) == m);
        }
    }
}

TEST_CASE("bbcrs keygen invariants") {
    auto f = Field::make_q(16);
    Rng rng(11);
    auto keys = bbcrs_keygen(f, 15, 6, rng);
    const MatrixGF q = keys.secret.pi.add(outer_product(keys.secret.alpha, keys.secret.beta));
    SUBCASE("Q Q^{-1} = I") {
        auto qi = inverse(q);
        REQUIRE(qi.has_value());
        CHECK(q.mul(*qi) == MatrixGF::identity(f, 15));
    }
    SUBCASE("R has rank one") {
        CHECK(rank(outer_product(keys.secret.alpha, keys.secret.beta)) == 1);
    }
    SUBCASE("<a, b> != -1 for b^T a = R Pi^{-1}, all seeds") {
        for (uint64_t seed = 0; seed < 50; ++seed) {
            Rng r2(seed);
            auto kk = bbcrs_keygen(f, 15, 6, r2);
            const VectorGF a = kk.secret.pi.apply_right(kk.secret.beta);
            Fe s{0};
            for (size_t i = 0; i < 15; ++i)
                s = f->add(s, f->mul(a[i], kk.secret.alpha[i]));
            CHECK(f->add(s, f->one()) != f->zero());
        }
    }
    SUBCASE("public matrix satisfies G_pub Q = S^{-1} G_sec") {
        const MatrixGF lhs = keys.pub.g_pub.mul(q);
        const MatrixGF rhs = inverse(keys.secret.s)->mul(grs_generator(keys.secret.spec));
        CHECK(lhs == rhs);
    }
    SUBCASE("rank-one structure: rows of G_pub decompose through the hidden code") {
        // C = C_sec Pi^{-1}; lambda = -(1/(1+<a,b>)) b with b = alpha
        const MatrixGF pi_inv = keys.secret.pi.transpose();
        const LinearCode c =
            LinearCode::from_generator(grs_generator(keys.secret.spec).mul(pi_inv));
        const VectorGF a = keys.secret.pi.apply_right(keys.secret.beta);
        Fe s{0};
        for (size_t i = 0; i < 15; ++i) s = f->add(s, f->mul(a[i], keys.secret.alpha[i]));
        const Fe coef = f->neg(f->inv(f->add(f->one(), s)));
        const VectorGF lambda = keys.secret.alpha.scale(coef);
        for (size_t r = 0; r < keys.pub.g_pub.rows(); ++r) {
            const VectorGF g = keys.pub.g_pub.row(r);
            // p = g (I + b^T a) = g + <g,b> a
            const VectorGF p = g.add(a.scale(inner_product(g, keys.secret.alpha)));
            CHECK(contains(c, p));
            CHECK(g == p.add(a.scale(inner_product(p, lambda))));
        }
        // and the public code equals C P^{-1} as codes
        auto pub_code = LinearCode::from_generator(keys.pub.g_pub);
        auto p_inv = rank_one_update_inverse(a, keys.secret.alpha);
        REQUIRE(p_inv.has_value());
        CHECK(code_equal(pub_code,
                         LinearCode::from_generator(c.generator().mul(*p_inv))));
    }
    SUBCASE("degenerate option gives a pure permutation") {
        Rng r3(12);
        auto kd = bbcrs_keygen(f, 15, 6, r3, {.degenerate = true});
        CHECK(kd.secret.alpha.is_zero());
        CHECK(square_dim(LinearCode::from_generator(kd.pub.g_pub)) == 11);
    }
}

TEST_CASE("bbcrs round trips") {
    auto f = Field::make_q(16);
    SUBCASE("zero errors accepts gamma 0") {
        Rng rng(13);
        auto keys = bbcrs_keygen(f, 15, 6, rng);
        auto msg = random_vector(f, 6, rng);
        auto ct = keys.pub.g_pub.apply_left(msg);
        auto dec = bbcrs_decrypt(keys.secret, ct);
        REQUIRE(dec.has_value());
        CHECK(dec->msg == msg);
        CHECK(dec->gamma == Fe{0});
    }
    SUBCASE("200 weight-4 round trips at (16, 15, 6)") {
        Rng kg(14);
        auto keys = bbcrs_keygen(f, 15, 6, kg);
        for (uint64_t seed = 0; seed < 200; ++seed) {
            Rng rng(seed);
            auto msg = random_vector(f, 6, rng);
            auto ct = bbcrs_encrypt(keys.pub, msg, rng);
            auto dec = bbcrs_decrypt(keys.secret, ct);
            REQUIRE(dec.has_value());
            CHECK(dec->msg == msg);
            // accepted gamma is the true <e, alpha>
            const VectorGF e = ct.sub(keys.pub.g_pub.apply_left(msg));
            CHECK(dec->gamma == inner_product(e, keys.secret.alpha));
        }
    }
    SUBCASE("wrong-gamma branches almost always fail to decode") {
        Rng kg(15);
        auto keys = bbcrs_keygen(f, 15, 6, kg);
        const MatrixGF q =
            keys.secret.pi.add(outer_product(keys.secret.alpha, keys.secret.beta));
        size_t wrong_decodes = 0, branches = 0;
        for (uint64_t seed = 0; seed < 50; ++seed) {
            Rng rng(seed + 1000);
            auto msg = random_vector(f, 6, rng);
            auto ct = bbcrs_encrypt(keys.pub, msg, rng);
            const VectorGF e = ct.sub(keys.pub.g_pub.apply_left(msg));
            const Fe gamma0 = inner_product(e, keys.secret.alpha);
            const VectorGF cq = q.apply_left(ct);
            for (uint32_t g = 0; g < 16; ++g) {
                if (Fe{g} == gamma0) continue;
                ++branches;
                if (grs_decode(keys.secret.spec, cq.sub(keys.secret.beta.scale(Fe{g}))))
                    ++wrong_decodes;
            }
        }
        CHECK(branches == 50 * 15);
        CHECK(wrong_decodes * 50 < branches);  // under 2%
    }
}

TEST_CASE("scheme round trips: 500 each at desk parameters") {
    SUBCASE("wieschebrink (31, 24, 6, 2)") {
        auto f = Field::make_q(31);
        Rng kg(100);
        auto keys = wieschebrink_keygen(f, 24, 6, 2, kg);
        for (uint64_t seed = 0; seed < 500; ++seed) {
            Rng rng(seed);
            auto msg = random_vector(f, 6, rng);
            auto dec = wieschebrink_decrypt(keys.secret,
                                            wieschebrink_encrypt(keys.pub, msg, rng));
            REQUIRE(dec.has_value());
            CHECK(*dec == msg);
        }
    }
    SUBCASE("bl (257, 200, 20, 8) with errors cleaned on L") {
        auto f = Field::make_q(257);
        Rng kg(101);
        auto keys = bl_keygen(f, 200, 20, 8, kg);
        Rng rng(102);
        for (int it = 0; it < 500; ++it) {
            const Fe m = f->sample(rng);
            // ciphertext whose error provably avoids L
            VectorGF x = random_vector(f, 20, rng);
            VectorGF ct = keys.pub.p.apply_left(x);
            for (size_t i = 0; i < 200; ++i) ct[i] = f->add(ct[i], m);
            for (int e = 0; e < 4; ++e) {
                size_t pos;
                do {
                    pos = rng.below(200);
                } while (std::binary_search(keys.secret.L.begin(), keys.secret.L.end(), pos));
                ct[pos] = f->add(ct[pos], f->sample_nonzero(rng));
            }
            CHECK(bl_decrypt(keys.secret, ct) == m);
        }
    }
    SUBCASE("bbcrs (16, 15, 6)") {
        auto f = Field::make_q(16);
        Rng kg(103);
        auto keys = bbcrs_keygen(f, 15, 6, kg);
        for (uint64_t seed = 0; seed < 500; ++seed) {
            Rng rng(seed + 7000);
            auto msg = random_vector(f, 6, rng);
            auto dec = bbcrs_decrypt(keys.secret, bbcrs_encrypt(keys.pub, msg, rng));
            REQUIRE(dec.has_value());
            CHECK(dec->msg == msg);
        }
    }
}

}  // TEST_SUITE
