#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "polarflip/code.hpp"

using namespace polarflip;

TEST_CASE("polar transform of [0,1]") {
    CHECK(polar_transform({0, 1}) == BitVec{1, 1});
}

TEST_CASE("polar transform maps zero to zero") {
    for (std::size_t n : {1u, 4u, 16u, 64u})
        CHECK(polar_transform(BitVec(n, 0)) == BitVec(n, 0));
}

TEST_CASE("polar transform is an involution and matches the dense product") {
    std::mt19937_64 gen(11);
    for (std::size_t n : {2u, 8u, 16u, 64u}) {
        for (int trial = 0; trial < 50; ++trial) {
            BitVec v(n);
            for (auto& b : v) b = gen() & 1;
            const BitVec once = polar_transform(v);
            CHECK(once == oracle::transform_matrix(v));
            CHECK(polar_transform(once) == v);
        }
    }
}

TEST_CASE("polar transform rejects non-power-of-two lengths") {
    BitVec v(3, 0);
    CHECK_THROWS_AS(polar_transform_inplace(v), std::invalid_argument);
}

TEST_CASE("encode traces") {
    const PolarCode tiny(2, 1, {0});
    CHECK(encode(tiny, BitVec{1}) == BitVec{1, 1});

    const PolarCode ex85(8, 5, {0, 1, 4});
    CHECK(encode(ex85, BitVec(5, 0)) == BitVec(8, 0));

    // info [1,0,0,0,0] lands on u_2; the codeword is the dense-product row.
    BitVec u(8, 0);
    u[2] = 1;
    CHECK(encode(ex85, BitVec{1, 0, 0, 0, 0}) == oracle::transform_matrix(u));
    CHECK(encode(ex85, BitVec{1, 0, 0, 0, 0}) == BitVec{1, 0, 1, 0, 0, 0, 0, 0});
}

TEST_CASE("encode is linear over GF(2)") {
    std::mt19937_64 gen(12);
    const PolarCode code = construct_frozen_set(32, 13, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        BitVec a(13), b(13), both(13);
        for (std::size_t i = 0; i < 13; ++i) {
            a[i] = gen() & 1;
            b[i] = gen() & 1;
            both[i] = a[i] ^ b[i];
        }
        const BitVec xa = encode(code, a), xb = encode(code, b), xab = encode(code, both);
        for (std::size_t i = 0; i < 32; ++i) CHECK(xab[i] == (xa[i] ^ xb[i]));
    }
}

TEST_CASE("encode rejects bad info length") {
    const PolarCode code(4, 2, {0, 1});
    CHECK_THROWS_AS(encode(code, BitVec{1}), std::invalid_argument);
}
