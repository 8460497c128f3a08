#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "difforge/catalog.hpp"
#include "difforge/designs.hpp"
#include "difforge/io.hpp"

using namespace difforge;

TEST_CASE("every catalog entry exports to a file that verifies and round-trips")
{
    for (const auto& id : catalog_list()) {
        const auto& e = catalog_get(id);
        auto j = export_catalog_entry(e);
        if (e.kind == "automorphism" || e.kind == "primitive_poly" ||
            e.kind == "ooc_filler")
            continue; // raw data, not a self-verifying design file
        auto v = verify_design_file(j);
        CHECK_MESSAGE(v.ok, id << ": " << v.note);
        auto text = dump_design_file(j);
        CHECK(dump_design_file(parse_design_file(text)) == text);
    }
}

TEST_CASE("family serialization keeps the data intact")
{
    const auto& s = *catalog_get("sdf/z30-6-6").sdf;
    auto back = sdf_from_design_file(to_design_file(s));
    CHECK(back.base_blocks == s.base_blocks);
    CHECK(back.k == s.k);
    CHECK(back.mu == s.mu);
    CHECK(back.group.orders() == s.group.orders());
    REQUIRE(back.pattern.has_value());
    CHECK(back.pattern->sigma1 == s.pattern->sigma1);

    const auto& d = *catalog_get("df/35x7-6").df;
    auto dback = df_from_design_file(to_design_file(d));
    CHECK(verify_relative_df(dback).ok);
    CHECK(dback.forbidden == d.forbidden);
}

TEST_CASE("developed designs and codes survive a file round trip")
{
    auto g = develop(*catalog_get("df/30x7-6").df);
    auto gback = design_from_design_file(to_design_file(g));
    CHECK(gback.kind == "gdd");
    CHECK(verify_gdd(gback, {6}).ok);

    OpticalOrthogonalCode c{35, 6, {{0, 1, 3, 7, 12, 20}}};
    auto cback = ooc_from_design_file(to_design_file(c));
    CHECK(cback.v == 35);
    CHECK(cback.codewords == c.codewords);
    CHECK(verify_design_file(to_design_file(c)).ok);
}

TEST_CASE("verification rejects corrupted files with a reason")
{
    auto j = to_design_file(*catalog_get("df/35x7-6").df);
    j["blocks"][0][0][0] = 1; // shift one coordinate
    auto v = verify_design_file(j);
    CHECK(!v.ok);
    CHECK(!v.note.empty());

    CHECK_THROWS(parse_design_file("not json"));
    auto bad = to_design_file(*catalog_get("df/35x7-6").df);
    bad.erase("kind");
    CHECK_THROWS(verify_design_file(bad)); // malformed, not merely failing
}

TEST_CASE("sources resolve from catalog ids and from disk")
{
    auto via_catalog = resolve_design_source("catalog://df/35x7-6");
    CHECK(verify_design_file(via_catalog).ok);

    const char* path = "/tmp/difforge_io_test.json";
    {
        std::ofstream out(path);
        out << dump_design_file(via_catalog);
    }
    auto via_file = resolve_design_source(path);
    CHECK(via_file == via_catalog);
    CHECK_THROWS(resolve_design_source("catalog://nope/nope"));
    CHECK_THROWS(resolve_design_source("/tmp/does-not-exist-difforge.json"));
}
