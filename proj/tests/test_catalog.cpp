#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "difforge/catalog.hpp"

using namespace difforge;

TEST_CASE("every stored family re-verifies from its raw data")
{
    // construction already validates; this re-runs the checks independently
    for (const auto& id : catalog_list("sdf")) {
        auto s = *catalog_get(id).sdf;
        CHECK_MESSAGE(verify_sdf(s).ok, id);
        if (s.pattern) CHECK_MESSAGE((pattern_check_type2(s) || pattern_check_type4(s)), id);
    }
    for (const auto& id : catalog_list("df"))
        CHECK_MESSAGE(verify_relative_df(*catalog_get(id).df).ok, id);
}

TEST_CASE("catalog inventory is complete")
{
    CHECK(catalog_list("sdf").size() == 30);
    CHECK(catalog_list("df").size() == 9);
    CHECK(catalog_list("witness").size() == 3);
    CHECK(catalog_list("ooc_filler").size() == 13);
    CHECK(catalog_list("bibd").size() == 1);
    CHECK(catalog_list("automorphism").size() == 2);
    CHECK(catalog_list("primitive_poly").size() == 2);
    CHECK_THROWS(catalog_get("sdf/nope"));
}

TEST_CASE("stored witnesses factor through their cyclotomic subgroup")
{
    for (const auto& id : catalog_list("witness")) {
        const auto& e = catalog_get(id);
        const auto& s = *catalog_get(e.witness_sdf_id).sdf;
        CHECK_MESSAGE(verify_type_witness(*e.witness, s, e.witness_type_d), id);
    }
}

TEST_CASE("first Paley construction: {0} with doubled squares")
{
    for (std::int64_t p : {5, 13, 17, 25}) {
        auto s = paley_sdf_1(p);
        CHECK(verify_sdf(s).ok);
        CHECK(s.k == p);
        CHECK(s.mu == p - 1);
        CHECK(s.base_blocks.size() == 1);
        CHECK(pattern_check_type2(s));
    }
    CHECK_THROWS(paley_sdf_1(12));
}

TEST_CASE("second Paley construction needs p = 3 mod 4")
{
    for (std::int64_t p : {7, 11, 19, 23}) {
        auto s = paley_sdf_2(p);
        CHECK(verify_sdf(s).ok);
        CHECK(s.k == p + 1);
        CHECK(s.mu == p + 1);
    }
    CHECK_THROWS(paley_sdf_2(13));
}

TEST_CASE("third Paley construction: two doubled blocks")
{
    for (std::int64_t p : {5, 13, 17}) {
        auto s = paley_sdf_3(p);
        CHECK(verify_sdf(s).ok);
        CHECK(s.base_blocks.size() == 2);
        CHECK(s.k == p + 1);
    }
}

TEST_CASE("twin prime power difference multisets")
{
    for (std::int64_t p : {3, 5, 9, 11}) {
        auto s = twin_prime_sdf(p);
        CHECK(verify_sdf(s).ok);
        CHECK(s.group.order() == p * (p + 2));
    }
    CHECK(verify_sdf(twin_prime_sdf(7)).ok); // 7 and 9 are both prime powers
    CHECK_THROWS(twin_prime_sdf(13));        // 15 is not
}

TEST_CASE("Singer difference multisets")
{
    auto s23 = singer_sdf(2, 3); // (7, 3, 1) Fano plane scaled by p
    CHECK(verify_sdf(s23).ok);
    CHECK(s23.group.order() == 7);
    auto s33 = singer_sdf(3, 3); // (13, 4, 1)
    CHECK(verify_sdf(s33).ok);
    CHECK(s33.group.order() == 13);
}

TEST_CASE("the six-block Z_4 family scales with p")
{
    for (std::int64_t p : {7, 11, 13}) {
        auto s = sdf_z4_k4_6p(p);
        CHECK(verify_sdf(s).ok);
        CHECK(s.k == 4);
        CHECK(s.mu == 6 * p);
        CHECK(s.group.order() == 4);
    }
}

TEST_CASE("spot checks against the published data")
{
    auto z45 = *catalog_get("sdf/z45-6-6").sdf;
    CHECK(z45.base_blocks.size() == 9);
    CHECK(std::count(z45.base_blocks.begin(), z45.base_blocks.end(),
                     Block{0, 1, 3, 7, 12, 25}) == 4);
    auto df = *catalog_get("df/63x41-8").df;
    CHECK(df.group.order() == 63 * 41);
    CHECK(df.base_blocks.size() == 45);
    CHECK(df.forbidden.size() == 63);
    auto fill = catalog_get("ooc/filler-63-8");
    CHECK(fill.filler == std::vector<std::int64_t>{0, 1, 3, 7, 15, 20, 31, 41});
    CHECK(catalog_get("bibd/31-6-1").bibd_base == Block{0, 1, 3, 8, 12, 18});
}
