#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "difforge/catalog.hpp"
#include "difforge/lifting.hpp"

using namespace difforge;

TEST_CASE("Q(1,m) equals m exactly")
{
    for (std::int64_t m = 1; m <= 20; ++m) {
        QBound b(1, m);
        CHECK(b.u() == 0);
        CHECK(b.equals_integer(m));
        CHECK(b.value() == doctest::Approx(static_cast<double>(m)));
        CHECK(b.exceeded_by(m + 1));
        CHECK(!b.exceeded_by(m));
    }
}

TEST_CASE("U(6,4) matches an independent hand computation")
{
    // U = sum_h C(4,h) 5^h (h-1) = 4*5*0 + 6*25*1 + 4*125*2 + 1*625*3
    QBound b(6, 4);
    CHECK(b.u() == 3025);
    CHECK(b.radicand() == QBound::Int(3025) * 3025 + 4 * 216 * 4);
}

TEST_CASE("the bound grows in both arguments")
{
    for (std::int64_t d = 1; d <= 12; ++d) {
        CHECK(QBound(d, 1).equals_integer(1)); // one block: bound degenerates
        for (std::int64_t m = 2; m <= 12; ++m) {
            if (d > 1) CHECK(QBound(d - 1, m) < QBound(d, m));
            CHECK(QBound(d, m - 1) < QBound(d, m));
        }
    }
}

namespace {

bool fixperm_exists_brute(std::int64_t r, std::int64_t a,
                          const std::vector<std::int64_t>& alpha)
{
    std::vector<std::int64_t> pi(static_cast<std::size_t>(r));
    std::iota(pi.begin(), pi.end(), 0);
    do {
        bool ok = true;
        for (std::int64_t x = 0; x < r && ok; ++x) {
            auto ax = alpha[static_cast<std::size_t>(x)];
            auto diff = (pi[static_cast<std::size_t>(ax)] -
                         pi[static_cast<std::size_t>(x)] + r) % r;
            ok = diff != a % r;
        }
        if (ok) return true;
    } while (std::next_permutation(pi.begin(), pi.end()));
    return false;
}

void sweep_fixperm(std::int64_t r)
{
    std::vector<std::int64_t> alpha(static_cast<std::size_t>(r));
    std::iota(alpha.begin(), alpha.end(), 0);
    do {
        for (std::int64_t a = 0; a < r; ++a) {
            bool exists = fixperm_exists_brute(r, a, alpha);
            std::vector<std::int64_t> pi;
            bool got = true;
            try {
                pi = fix_permutation(r, a, alpha);
            } catch (const std::logic_error&) {
                got = false;
            }
            REQUIRE(got == exists);
            if (!got) continue;
            for (std::int64_t x = 0; x < r; ++x) {
                auto ax = alpha[static_cast<std::size_t>(x)];
                auto diff = (pi[static_cast<std::size_t>(ax)] -
                             pi[static_cast<std::size_t>(x)] + r) % r;
                REQUIRE(diff != a);
            }
        }
    } while (std::next_permutation(alpha.begin(), alpha.end()));
}

} // namespace

TEST_CASE("difference-avoiding relabelings: full sweep over S_5 and S_6")
{
    sweep_fixperm(5);
    sweep_fixperm(6);
}

TEST_CASE("stored witnesses lift to verified relative families")
{
    for (const auto& id : catalog_list("witness")) {
        const auto& e = catalog_get(id);
        const auto& s = *catalog_get(e.witness_sdf_id).sdf;
        REQUIRE(verify_type_witness(*e.witness, s, e.witness_type_d));
        auto df = lift_to_df(*e.witness, s, e.witness_type_d);
        CHECK_MESSAGE(verify_relative_df(df).ok, id);
    }
}

TEST_CASE("end-to-end lifts at small prime powers")
{
    struct Case { const char* sdf; std::int64_t p, e; };
    for (const Case& c : {Case{"sdf/z2-5-20", 41, 1}, Case{"sdf/z10-5-12", 13, 1},
                          Case{"sdf/z30-6-6", 13, 1}, Case{"sdf/z30-6-6", 25, 2},
                          Case{"sdf/z45-6-6", 13, 1}, Case{"sdf/z63-8-8", 73, 1},
                          Case{"sdf/z81-9-8", 89, 1}}) {
        const auto& s = *catalog_get(c.sdf).sdf;
        FiniteField f = c.e == 1 ? FiniteField(c.p, 1)
                                 : FiniteField(c.p == 25 ? 5 : 3, 2);
        auto res = lift_search(s, f);
        REQUIRE_MESSAGE(res.status == SolveStatus::kFound,
                        c.sdf << " over q=" << f.q());
        REQUIRE(res.df.has_value());
        CHECK(verify_relative_df(*res.df).ok);
        CHECK(res.df->group.order() == s.group.order() * f.q());
        CHECK(res.df->k == s.k);
        CHECK(res.df->lambda == 1);
        CHECK(res.df->base_blocks.size() * s.k * (s.k - 1) ==
              static_cast<std::size_t>(res.df->group.order() - s.group.order()));
        CHECK(verify_type_witness(*res.witness, s, res.type_d));
    }
}

TEST_CASE("lift honestly reports unsolvable instances")
{
    auto res = lift_search(*catalog_get("sdf/z45-6-6").sdf, FiniteField(7, 1));
    CHECK(res.status == SolveStatus::kUnsat);
    CHECK(!res.df.has_value());
}

TEST_CASE("node budget turns an exhaustive answer into unknown")
{
    SolveOptions opts;
    opts.node_budget = 50;
    auto res = lift_search(*catalog_get("sdf/z30-6-6").sdf, FiniteField(7, 1), opts);
    CHECK(res.status == SolveStatus::kUnknown);
}

TEST_CASE("lift rejects fields with q != 1 mod mu")
{
    CHECK_THROWS(lift_search(*catalog_get("sdf/z30-6-6").sdf, FiniteField(11, 1)));
}
