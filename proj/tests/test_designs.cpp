#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "difforge/catalog.hpp"
#include "difforge/designs.hpp"
#include "difforge/lifting.hpp"

using namespace difforge;

namespace {

Design bibd31()
{
    RelativeDifferenceFamily df;
    df.group = AbelianGroup({31});
    df.forbidden = {0};
    df.base_blocks = {catalog_get("bibd/31-6-1").bibd_base};
    df.k = 6;
    return develop(df);
}

} // namespace

TEST_CASE("developing the cyclic base block gives a (31,6,1) design")
{
    auto b = bibd31();
    CHECK(b.points.size() == 31);
    CHECK(b.blocks.size() == 31);
    CHECK(verify_bibd(b, 6).ok);

    SUBCASE("verification catches a corrupted block") {
        auto bad = b;
        bad.blocks[5][0] = (bad.blocks[5][0] + 1) % 31;
        auto v = verify_bibd(bad, 6);
        CHECK(!v.ok);
        CHECK(v.certificate.has_value());
    }
    SUBCASE("verification catches a missing block") {
        auto bad = b;
        bad.blocks.pop_back();
        CHECK(!verify_bibd(bad, 6).ok);
    }
}

TEST_CASE("the stored permutations act on the design as claimed")
{
    auto b = bibd31();
    auto p3 = catalog_get("perm/31-order3").permutation;
    auto p5 = catalog_get("perm/31-order5").permutation;
    CHECK(is_automorphism(b, p3));
    CHECK(is_automorphism(b, p5));
    CHECK(cycle_structure(p3) == std::vector<std::int64_t>{1, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3});
    CHECK(cycle_structure(p5) == std::vector<std::int64_t>{1, 5, 5, 5, 5, 5, 5});
    // a random transposition is (almost surely) not block-preserving
    auto bad = p5;
    std::swap(bad[1], bad[2]);
    CHECK(!is_automorphism(b, bad));
}

TEST_CASE("transversal designs from finite-field multiplication tables")
{
    auto td77 = td_from_mols(7, 7);
    CHECK(verify_gdd(td77, {7}).ok);
    CHECK(td77.blocks.size() == 49);
    CHECK(group_type(td77) == "7^7");
    CHECK(verify_gdd(td_from_mols(8, 7), {8}).ok);
    CHECK(verify_gdd(td_from_mols(3, 3), {3}).ok);
    CHECK_THROWS(td_from_mols(9, 7)); // at most n+1 groups
    CHECK_THROWS(td_from_mols(4, 4)); // order must be prime

    SUBCASE("wrong block-size set is rejected") {
        CHECK(!verify_gdd(td77, {6}).ok);
    }
    SUBCASE("deleting one block's points leaves a {6,7}-design of type 6^7") {
        auto del = delete_points(td77, td77.blocks[0]);
        CHECK(verify_gdd(del, {6, 7}).ok);
        CHECK(group_type(del) == "6^7");
    }
}

TEST_CASE("weight-2 inflation of a 3-group design")
{
    auto td33 = td_from_mols(3, 3);
    auto infl = inflate_by_weight(td33, 2, [](int k) { return td_from_mols(k, 2); });
    CHECK(verify_gdd(infl, {3}).ok);
    CHECK(group_type(infl) == "6^3");
    CHECK(infl.points.size() == 18);
}

TEST_CASE("every stored relative family develops into a verified group-divisible design")
{
    for (const auto& id : catalog_list("df")) {
        const auto& df = *catalog_get(id).df;
        auto d = develop(df);
        CHECK_MESSAGE(verify_gdd(d, {static_cast<int>(df.k)}).ok, id);
        CHECK(d.groups.size() ==
              static_cast<std::size_t>(df.group.order() / df.forbidden.size()));
    }
}

TEST_CASE("CRT re-coordinatization preserves the family")
{
    auto dfz = df_to_product(*catalog_get("df/30x7-6").df, 30, 7);
    CHECK(verify_relative_df(dfz).ok);
    CHECK(dfz.group.orders() == std::vector<std::int64_t>{30, 7});
    auto g = develop(dfz);
    CHECK(verify_gdd(g, {6}).ok);
    CHECK(group_type(g) == "30^7");
}

TEST_CASE("rotational point sets of orders 6 and 10 over seven groups")
{
    auto b31 = bibd31();
    auto dfz = df_to_product(*catalog_get("df/30x7-6").df, 30, 7);
    auto p3 = catalog_get("perm/31-order3").permutation;
    auto p5 = catalog_get("perm/31-order5").permutation;
    for (int r : {6, 10}) {
        auto rb = rotational_bibd(7, r, dfz, b31, r == 6 ? p5 : p3);
        CHECK(rb.bibd.points.size() == 211);
        CHECK(rb.bibd.blocks.size() == 211 * 210 / 30);
        CHECK(verify_bibd(rb.bibd, 6).ok);
        CHECK(is_r_rotational(rb.bibd, rb.gamma, r));
        CHECK(!is_r_rotational(rb.bibd, rb.gamma, r == 6 ? 10 : 6));
    }
}

TEST_CASE("rotational design over thirteen groups via the lift solver")
{
    FiniteField f(13, 1);
    auto out = lift_search(*catalog_get("sdf/z30-6-6").sdf, f, {});
    REQUIRE(out.status == SolveStatus::kFound);
    auto rb = rotational_bibd(13, 6, *out.df,
                              bibd31(), catalog_get("perm/31-order5").permutation);
    CHECK(rb.bibd.points.size() == 391);
    CHECK(verify_bibd(rb.bibd, 6).ok);
    CHECK(is_r_rotational(rb.bibd, rb.gamma, 6));
}

TEST_CASE("rotational assembly rejects mismatched ingredients")
{
    auto b31 = bibd31();
    auto dfz = df_to_product(*catalog_get("df/30x7-6").df, 30, 7);
    auto p5 = catalog_get("perm/31-order5").permutation;
    CHECK_THROWS(rotational_bibd(7, 6, dfz, b31,
                                 catalog_get("perm/31-order3").permutation));
    CHECK_THROWS(rotational_bibd(11, 6, dfz, b31, p5)); // df is over the wrong q
}
