#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "difforge/field.hpp"
#include "difforge/group.hpp"

using namespace difforge;

TEST_CASE("mixed-radix groups encode and decode consistently")
{
    AbelianGroup g({30, 7});
    CHECK(g.order() == 210);
    for (std::int64_t x = 0; x < 30; ++x)
        for (std::int64_t i = 0; i < 7; ++i) {
            auto e = g.encode({x, i});
            CHECK(e == x * 7 + i);
            CHECK(g.decode(e) == std::vector<std::int64_t>{x, i});
        }
    CHECK(g.add(g.encode({29, 6}), g.encode({1, 1})) == g.encode({0, 0}));
    CHECK(g.neg(g.encode({1, 2})) == g.encode({29, 5}));
    CHECK(g.sub(g.encode({0, 0}), g.encode({1, 1})) == g.encode({29, 6}));
}

TEST_CASE("involutions are the order-2 elements")
{
    AbelianGroup g({12});
    int found = 0;
    for (std::int64_t x = 0; x < 12; ++x)
        if (g.is_involution(x)) {
            ++found;
            CHECK(g.add(x, x) == 0);
            CHECK(x != 0);
        }
    CHECK(found == 1); // only 6 in Z_12
}

TEST_CASE("subgroup recognition on cyclic groups")
{
    AbelianGroup g({20});
    CHECK(g.is_subgroup({0, 5, 10, 15}));
    CHECK(g.is_subgroup({0, 10}));
    CHECK(!g.is_subgroup({0, 3, 10}));
    auto h = g.subgroup_generated({4});
    CHECK(h == std::vector<std::int64_t>{0, 4, 8, 12, 16});
}

TEST_CASE("Chinese remainder map round-trips")
{
    CrtIso crt(30, 7);
    std::set<std::int64_t> image;
    for (std::int64_t a = 0; a < 30; ++a)
        for (std::int64_t b = 0; b < 7; ++b) {
            auto x = crt.forward(a, b);
            image.insert(x);
            auto [a2, b2] = crt.backward(x);
            CHECK(a2 == a);
            CHECK(b2 == b);
        }
    CHECK(image.size() == 210);
    CHECK_THROWS(CrtIso(6, 4));
}

TEST_CASE("prime power recognition")
{
    CHECK(is_prime(2));
    CHECK(is_prime(97));
    CHECK(!is_prime(91));
    CHECK(prime_power_split(49) == std::pair<std::int64_t, int>{7, 2});
    CHECK(prime_power_split(25) == std::pair<std::int64_t, int>{5, 2});
    CHECK(prime_power_split(13) == std::pair<std::int64_t, int>{13, 1});
    CHECK(!prime_power_split(12).has_value());
}

TEST_CASE("GF(13) arithmetic against hand values")
{
    FiniteField f(13, 1);
    CHECK(f.q() == 13);
    CHECK(f.omega() == 2); // 2 generates F_13^*
    // oracle: powers of 2 mod 13
    std::int64_t acc = 1;
    for (int i = 0; i < 12; ++i) {
        CHECK(f.pow_omega(i) == acc);
        CHECK(f.discrete_log(acc) == i);
        acc = acc * 2 % 13;
    }
    CHECK(f.add(9, 9) == 5);
    CHECK(f.mul(5, 8) == 1);
    CHECK(f.inv(5) == 8);
    CHECK(f.neg(1) == 12);
}

TEST_CASE("cyclotomic classes of index 10 in GF(41)")
{
    FiniteField f(41, 1);
    // oracle: the 10th powers mod 41 computed directly
    std::set<std::int64_t> tenth;
    for (std::int64_t x = 1; x < 41; ++x) {
        std::int64_t p = 1;
        for (int i = 0; i < 10; ++i) p = p * x % 41;
        tenth.insert(p);
    }
    auto c0 = f.cyclotomic_class(10, 0);
    CHECK(std::set<std::int64_t>(c0.begin(), c0.end()) == tenth);
    CHECK(tenth == std::set<std::int64_t>{1, 9, 32, 40});
    // classes partition F_q^*
    std::set<std::int64_t> all;
    for (int i = 0; i < 10; ++i)
        for (auto x : f.cyclotomic_class(10, i)) all.insert(x);
    CHECK(all.size() == 40);
}

TEST_CASE("systems of representatives for power-residue cosets")
{
    FiniteField f(13, 1);
    // d' = 3: cosets of the cubes; {1, 2, 4} hits classes 0, 1, 2
    CHECK(f.is_system_of_representatives(3, {1, 2, 4}));
    CHECK(!f.is_system_of_representatives(3, {1, 5, 8})); // all cubes
    CHECK(!f.is_system_of_representatives(3, {1, 2}));
}

TEST_CASE("GF(25) through the designated modulus")
{
    FiniteField f(5, 2, std::vector<std::int64_t>{2, -1, 1}); // x^2 - x + 2
    CHECK(f.q() == 25);
    // omega = x has full order 24
    std::set<std::int64_t> pows;
    for (int i = 0; i < 24; ++i) pows.insert(f.pow_omega(i));
    CHECK(pows.size() == 24);
    // trace is F_5-linear and not identically zero
    bool nonzero = false;
    for (std::int64_t x = 0; x < 25; ++x)
        if (f.trace(x) != 0) nonzero = true;
    CHECK(nonzero);
    CHECK_THROWS(FiniteField(5, 2, std::vector<std::int64_t>{1, 0, 1})); // not primitive
}

TEST_CASE("GF(8) field axioms hold exhaustively")
{
    FiniteField f(2, 3);
    for (std::int64_t a = 0; a < 8; ++a) {
        CHECK(f.add(a, f.neg(a)) == 0);
        if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
        for (std::int64_t b = 0; b < 8; ++b) {
            CHECK(f.add(a, b) == f.add(b, a));
            CHECK(f.mul(a, b) == f.mul(b, a));
            for (std::int64_t c = 0; c < 8; ++c)
                CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
    }
}
