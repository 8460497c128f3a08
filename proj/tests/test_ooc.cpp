#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <algorithm>
#include <functional>

#include "difforge/catalog.hpp"
#include "difforge/lifting.hpp"
#include "difforge/ooc.hpp"

using namespace difforge;

TEST_CASE("codeword verification counts internal differences only")
{
    OpticalOrthogonalCode one{35, 6, {{0, 1, 3, 7, 12, 20}}};
    auto r = verify_ooc(one);
    CHECK(r.ok);
    CHECK(r.missing.size() == 5); // 0 plus the four uncovered residues
    CHECK(std::count(r.missing.begin(), r.missing.end(), 0) == 1);
    CHECK(is_optimal_ooc(one));

    OpticalOrthogonalCode clash{7, 3, {{0, 1, 2}}}; // 1 appears twice as a difference
    CHECK(!verify_ooc(clash).ok);

    OpticalOrthogonalCode cross{13, 3, {{0, 1, 4}, {0, 2, 6}}};
    auto rc = verify_ooc(cross);
    CHECK(!rc.ok); // difference 4 shows up in both codewords
}

TEST_CASE("each codeword may be translated independently")
{
    OpticalOrthogonalCode shifted{35, 6, {{5, 6, 8, 12, 17, 25}}};
    CHECK(verify_ooc(shifted).ok);
    CHECK(is_optimal_ooc(shifted));
}

TEST_CASE("a relative family over the cyclic product is already a code")
{
    auto c = ooc_from_relative_df(*catalog_get("df/30x7-6").df);
    CHECK(c.v == 210);
    CHECK(c.codewords.size() == 6);
    auto r = verify_ooc(c);
    CHECK(r.ok);
    // the uncovered residues are exactly the forbidden subgroup's image
    CHECK(r.missing.size() == 30);
}

TEST_CASE("composing a lifted family with fillers yields optimal codes")
{
    SUBCASE("order 130, weight 5, no filler needed") {
        auto out = lift_search(*catalog_get("sdf/z10-5-12").sdf, FiniteField(13, 1), {});
        REQUIRE(out.status == SolveStatus::kFound);
        auto c = compose_ooc(*out.df, {10, 5, {}});
        CHECK(c.v == 130);
        CHECK(is_optimal_ooc(c));
    }
    SUBCASE("order 245, weight 6, one filler codeword") {
        auto c = compose_ooc(*catalog_get("df/35x7-6").df,
                             {35, 6, {catalog_get("ooc/filler-35-6").filler}});
        CHECK(c.v == 245);
        CHECK(is_optimal_ooc(c));
    }
    SUBCASE("order 2583, weight 8, one filler codeword") {
        auto c = compose_ooc(*catalog_get("df/63x41-8").df,
                             {63, 8, {catalog_get("ooc/filler-63-8").filler}});
        CHECK(c.v == 2583);
        CHECK(c.codewords.size() == 45 + 1);
        CHECK(is_optimal_ooc(c));
    }
    SUBCASE("a clashing filler is rejected") {
        CHECK_THROWS(compose_ooc(*catalog_get("df/35x7-6").df,
                                 {35, 6, {{0, 1, 2, 3, 4, 5}}}));
    }
}

TEST_CASE("exhaustive codeword search agrees with hand-checkable cases")
{
    auto r73 = search_ooc_exhaustive(7, 3);
    REQUIRE(r73.status == SearchStatus::kFound);
    CHECK(verify_ooc(*r73.code).ok);
    CHECK(is_optimal_ooc(*r73.code));

    auto r84 = search_ooc_exhaustive(8, 4); // 12 distinct differences out of 7: impossible
    CHECK(r84.status == SearchStatus::kNone);
    CHECK(r84.fully_explored);

    auto r638 = search_ooc_exhaustive(63, 8);
    REQUIRE(r638.status == SearchStatus::kFound);
    CHECK(verify_ooc(*r638.code).ok);

    OpticalOrthogonalCode published{63, 8, {catalog_get("ooc/filler-63-8").filler}};
    CHECK(verify_ooc(published).ok);
}

TEST_CASE("search results match a brute-force single-codeword oracle")
{
    // oracle: does any k-subset of Z_v starting at 0 have k(k-1) distinct diffs?
    auto oracle = [](std::int64_t v, int k) {
        std::vector<int> idx(static_cast<std::size_t>(k));
        std::function<bool(int, std::int64_t)> rec = [&](int depth, std::int64_t lo) {
            if (depth == k) {
                std::set<std::int64_t> diffs;
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j)
                        if (i != j) diffs.insert(((idx[static_cast<std::size_t>(i)] -
                                                   idx[static_cast<std::size_t>(j)]) % v + v) % v);
                return static_cast<int>(diffs.size()) == k * (k - 1);
            }
            for (std::int64_t x = lo; x < v; ++x) {
                idx[static_cast<std::size_t>(depth)] = static_cast<int>(x);
                if (rec(depth + 1, x + 1)) return true;
            }
            return false;
        };
        idx[0] = 0;
        return rec(1, 1);
    };
    for (std::int64_t v = 7; v <= 20; ++v)
        for (int k = 3; k <= 5; ++k) {
            auto r = search_ooc_exhaustive(v, k);
            REQUIRE(r.status != SearchStatus::kUnknown);
            CHECK_MESSAGE((r.status == SearchStatus::kFound) == oracle(v, k),
                          "v=" << v << " k=" << k);
        }
}

TEST_CASE("exhaustive family search over small groups")
{
    auto r = search_relative_df_exhaustive(AbelianGroup({4}), {0, 2}, 2);
    REQUIRE(r.status == SearchStatus::kFound);
    CHECK(verify_relative_df(*r.df).ok);

    auto none = search_relative_df_exhaustive(AbelianGroup({25}),
                                              {0, 5, 10, 15, 20}, 5);
    CHECK(none.status == SearchStatus::kNone);
    CHECK(none.fully_explored);
}

TEST_CASE("the node budget is honoured")
{
    auto prev = []() -> std::optional<std::string> {
        const char* e = std::getenv("DIFFORGE_NODE_BUDGET");
        return e ? std::optional<std::string>(e) : std::nullopt;
    }();
    setenv("DIFFORGE_NODE_BUDGET", "100", 1);
    auto r = search_ooc_exhaustive(81, 9);
    CHECK(r.status == SearchStatus::kUnknown);
    CHECK(!r.fully_explored);
    CHECK(r.nodes <= 101); // the budget check runs after the node counter increments
    if (prev) setenv("DIFFORGE_NODE_BUDGET", prev->c_str(), 1);
    else unsetenv("DIFFORGE_NODE_BUDGET");
}
