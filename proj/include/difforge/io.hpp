#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "difforge/catalog.hpp"
#include "difforge/designs.hpp"
#include "difforge/differences.hpp"
#include "difforge/field.hpp"
#include "difforge/group.hpp"
#include "difforge/lifting.hpp"
#include "difforge/ooc.hpp"

namespace difforge {

// Design files carry one object each. Elements are integer tuples: the cyclic
// coordinates first, the field encoding last (when a field part is present).
// Serialization sorts blocks canonically, so round trips are byte-identical.

namespace io_detail {

using nlohmann::json;

inline json element_tuple(const AbelianGroup& g, std::int64_t e)
{
    auto coords = g.decode(e);
    return json(coords);
}

inline std::int64_t element_from_tuple(const AbelianGroup& g, const json& t)
{
    if (!t.is_array() || t.size() != g.orders().size())
        throw std::invalid_argument("element tuple arity mismatch");
    std::vector<std::int64_t> coords;
    for (const auto& c : t) coords.push_back(c.get<std::int64_t>());
    return g.encode(coords);
}

inline json group_json(const AbelianGroup& g)
{
    return json{{"cyclic_orders", g.orders()}};
}

inline json field_json(const FiniteField& f)
{
    return json{{"p", f.p()}, {"e", f.e()}, {"modulus", f.modulus()}};
}

inline AbelianGroup group_from_json(const json& j)
{
    if (!j.contains("cyclic_orders")) throw std::invalid_argument("missing cyclic_orders");
    return AbelianGroup(j.at("cyclic_orders").get<std::vector<std::int64_t>>());
}

inline FiniteField field_from_json(const json& j)
{
    return FiniteField(j.at("p").get<std::int64_t>(), j.at("e").get<int>(),
                       j.value("modulus", std::vector<std::int64_t>{}).empty()
                           ? std::nullopt
                           : std::make_optional(j.at("modulus").get<std::vector<std::int64_t>>()));
}

inline json blocks_json(const AbelianGroup& g, const std::vector<Block>& blocks, bool sort_inner)
{
    std::vector<Block> bs = blocks;
    if (sort_inner)
        for (auto& b : bs) std::sort(b.begin(), b.end());
    std::sort(bs.begin(), bs.end());
    json out = json::array();
    for (const auto& b : bs) {
        json jb = json::array();
        for (auto e : b) jb.push_back(element_tuple(g, e));
        out.push_back(jb);
    }
    return out;
}

inline std::vector<Block> blocks_from_json(const AbelianGroup& g, const json& j)
{
    std::vector<Block> out;
    for (const auto& jb : j) {
        Block b;
        for (const auto& t : jb) b.push_back(element_from_tuple(g, t));
        out.push_back(std::move(b));
    }
    return out;
}

} // namespace io_detail

inline nlohmann::json to_design_file(const StrongDifferenceFamily& s)
{
    using namespace io_detail;
    json j;
    j["kind"] = "sdf";
    j["group"] = group_json(s.group);
    j["params"] = {{"k", s.k}, {"mu", s.mu}};
    // SDF blocks are multisets and patterns index block positions: keep order
    j["blocks"] = [&] {
        json out = json::array();
        for (const auto& b : s.base_blocks) {
            json jb = json::array();
            for (auto e : b) jb.push_back(element_tuple(s.group, e));
            out.push_back(jb);
        }
        return out;
    }();
    if (s.pattern) {
        j["pattern"] = {{"sigma1", s.pattern->sigma1},
                        {"sigma2", s.pattern->sigma2},
                        {"sigma3", s.pattern->sigma3}};
    }
    return j;
}

inline nlohmann::json to_design_file(const RelativeDifferenceFamily& d)
{
    using namespace io_detail;
    json j;
    j["kind"] = "df";
    j["group"] = group_json(d.group);
    json forb = json::array();
    auto sorted = d.forbidden;
    std::sort(sorted.begin(), sorted.end());
    for (auto e : sorted) forb.push_back(element_tuple(d.group, e));
    j["forbidden"] = forb;
    j["params"] = {{"k", d.k}, {"lambda", d.lambda}};
    j["blocks"] = blocks_json(d.group, d.base_blocks, true);
    return j;
}

inline nlohmann::json to_design_file(const WitnessCollection& w)
{
    using namespace io_detail;
    json j;
    j["kind"] = "witness";
    j["group"] = group_json(w.g_part);
    j["group"]["field"] = field_json(w.field);
    j["params"] = {{"k", w.k}, {"mu", w.mu}, {"type_d", w.type_d}};
    json blocks = json::array();
    for (const auto& b : w.blocks) {
        json jb = json::array();
        for (auto [g, f] : b) {
            auto coords = w.g_part.decode(g);
            coords.push_back(f);
            jb.push_back(json(coords));
        }
        blocks.push_back(jb);
    }
    j["blocks"] = blocks;
    return j;
}

inline nlohmann::json to_design_file(const Design& d)
{
    using nlohmann::json;
    json j;
    j["kind"] = d.kind; // gdd | bibd
    auto pts = d.points;
    std::sort(pts.begin(), pts.end());
    j["points"] = pts;
    std::vector<std::vector<std::int64_t>> gs = d.groups;
    for (auto& g : gs) std::sort(g.begin(), g.end());
    std::sort(gs.begin(), gs.end());
    j["groups"] = gs;
    std::vector<Block> bs = d.blocks;
    for (auto& b : bs) std::sort(b.begin(), b.end());
    std::sort(bs.begin(), bs.end());
    j["blocks"] = bs;
    return j;
}

inline nlohmann::json to_design_file(const OpticalOrthogonalCode& c)
{
    using nlohmann::json;
    json j;
    j["kind"] = "ooc";
    j["group"] = {{"cyclic_orders", std::vector<std::int64_t>{c.v}}};
    j["params"] = {{"k", c.k}};
    std::vector<Block> ws = c.codewords;
    for (auto& w : ws) std::sort(w.begin(), w.end());
    std::sort(ws.begin(), ws.end());
    j["blocks"] = ws;
    auto r = verify_ooc(c);
    if (r.ok) j["missing"] = r.missing;
    return j;
}

inline StrongDifferenceFamily sdf_from_design_file(const nlohmann::json& j)
{
    using namespace io_detail;
    StrongDifferenceFamily s;
    s.group = group_from_json(j.at("group"));
    s.k = j.at("params").at("k").get<int>();
    s.mu = j.at("params").at("mu").get<std::int64_t>();
    s.base_blocks = blocks_from_json(s.group, j.at("blocks"));
    if (j.contains("pattern")) {
        SdfPattern p;
        p.sigma1 = j.at("pattern").at("sigma1").get<std::vector<int>>();
        p.sigma2 = j.at("pattern").at("sigma2").get<std::vector<int>>();
        p.sigma3 = j.at("pattern").at("sigma3").get<std::vector<int>>();
        s.pattern = p;
    }
    return s;
}

inline RelativeDifferenceFamily df_from_design_file(const nlohmann::json& j)
{
    using namespace io_detail;
    RelativeDifferenceFamily d;
    d.group = group_from_json(j.at("group"));
    for (const auto& t : j.at("forbidden"))
        d.forbidden.push_back(element_from_tuple(d.group, t));
    d.k = j.at("params").at("k").get<int>();
    d.lambda = j.at("params").value("lambda", 1);
    d.base_blocks = blocks_from_json(d.group, j.at("blocks"));
    return d;
}

inline WitnessCollection witness_from_design_file(const nlohmann::json& j)
{
    using namespace io_detail;
    WitnessCollection w;
    w.g_part = group_from_json(j.at("group"));
    w.field = field_from_json(j.at("group").at("field"));
    w.k = j.at("params").at("k").get<int>();
    w.mu = j.at("params").at("mu").get<std::int64_t>();
    w.type_d = j.at("params").at("type_d").get<int>();
    const std::size_t arity = w.g_part.orders().size() + 1;
    for (const auto& jb : j.at("blocks")) {
        std::vector<std::pair<std::int64_t, std::int64_t>> b;
        for (const auto& t : jb) {
            if (!t.is_array() || t.size() != arity)
                throw std::invalid_argument("witness tuple arity mismatch");
            std::vector<std::int64_t> coords = t.get<std::vector<std::int64_t>>();
            std::int64_t f = coords.back();
            coords.pop_back();
            b.emplace_back(w.g_part.encode(coords), f);
        }
        w.blocks.push_back(std::move(b));
    }
    return w;
}

inline Design design_from_design_file(const nlohmann::json& j)
{
    Design d;
    d.kind = j.at("kind").get<std::string>();
    d.points = j.at("points").get<std::vector<std::int64_t>>();
    d.groups = j.at("groups").get<std::vector<std::vector<std::int64_t>>>();
    d.blocks = j.at("blocks").get<std::vector<Block>>();
    return d;
}

inline OpticalOrthogonalCode ooc_from_design_file(const nlohmann::json& j)
{
    OpticalOrthogonalCode c;
    c.v = j.at("group").at("cyclic_orders").at(0).get<std::int64_t>();
    c.k = j.at("params").at("k").get<int>();
    c.codewords = j.at("blocks").get<std::vector<Block>>();
    return c;
}

inline std::string dump_design_file(const nlohmann::json& j) { return j.dump(2) + "\n"; }

inline nlohmann::json parse_design_file(const std::string& text)
{
    auto j = nlohmann::json::parse(text);
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("design file needs a kind");
    return j;
}

inline nlohmann::json read_design_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_design_file(ss.str());
}

struct FileVerdict {
    bool ok = false;
    std::string note;
};

// Verification dispatch for any design-file kind.
inline FileVerdict verify_design_file(const nlohmann::json& j)
{
    const auto kind = j.at("kind").get<std::string>();
    auto from = [](const VerifyResult& r) {
        return FileVerdict{r.ok, r.certificate ? r.certificate->note : std::string{}};
    };
    if (kind == "sdf") {
        auto s = sdf_from_design_file(j);
        auto r = verify_sdf(s);
        if (!r.ok) return from(r);
        if (s.pattern) {
            if (pattern_check_type2(s)) return {true, "type-2 pattern holds"};
            if (pattern_check_type4(s)) return {true, "type-4 pattern holds"};
            return {false, "declared pattern fails both type checks"};
        }
        return {true, ""};
    }
    if (kind == "df") return from(verify_relative_df(df_from_design_file(j)));
    if (kind == "witness") {
        auto w = witness_from_design_file(j);
        StrongDifferenceFamily s;
        s.group = w.g_part;
        s.k = w.k;
        s.mu = w.mu;
        for (const auto& b : w.blocks) {
            Block pb;
            for (auto [g, f] : b) pb.push_back(g);
            std::sort(pb.begin(), pb.end());
            s.base_blocks.push_back(std::move(pb));
        }
        if (!verify_sdf(s).ok) return {false, "projection is not a strong difference family"};
        if (!verify_type_witness(w, s, w.type_d)) return {false, "type-d factoring check failed"};
        return {true, ""};
    }
    if (kind == "gdd" || kind == "bibd") {
        auto d = design_from_design_file(j);
        std::vector<int> sizes;
        for (const auto& b : d.blocks)
            if (std::find(sizes.begin(), sizes.end(), static_cast<int>(b.size())) == sizes.end())
                sizes.push_back(static_cast<int>(b.size()));
        auto r = kind == "bibd" && sizes.size() == 1 ? verify_bibd(d, sizes[0])
                                                     : verify_gdd(d, sizes);
        return from(r);
    }
    if (kind == "ooc") {
        auto r = verify_ooc(ooc_from_design_file(j));
        return {r.ok, r.note};
    }
    return {false, "unknown kind: " + kind};
}

// catalog:// URIs resolve to design files.
inline nlohmann::json export_catalog_entry(const CatalogEntry& e)
{
    if (e.sdf) return to_design_file(*e.sdf);
    if (e.df) return to_design_file(*e.df);
    if (e.witness) return to_design_file(*e.witness);
    if (e.kind == "ooc_filler") {
        OpticalOrthogonalCode c{e.filler_v, e.filler_k, {}};
        if (!e.filler.empty()) c.codewords.push_back(e.filler);
        return to_design_file(c);
    }
    if (e.kind == "bibd") {
        RelativeDifferenceFamily df;
        df.group = AbelianGroup({e.bibd_v});
        df.forbidden = {0};
        df.base_blocks = {e.bibd_base};
        df.k = static_cast<int>(e.bibd_base.size());
        return to_design_file(develop(df));
    }
    if (e.kind == "automorphism") {
        nlohmann::json j;
        j["kind"] = "automorphism";
        j["image"] = e.permutation;
        return j;
    }
    if (e.kind == "primitive_poly") {
        nlohmann::json j;
        j["kind"] = "primitive_poly";
        j["p"] = e.poly_p;
        j["modulus"] = e.poly;
        return j;
    }
    throw std::invalid_argument("catalog entry has no exportable payload: " + e.id);
}

inline nlohmann::json resolve_design_source(const std::string& src)
{
    const std::string scheme = "catalog://";
    if (src.rfind(scheme, 0) == 0)
        return export_catalog_entry(catalog_get(src.substr(scheme.size())));
    return read_design_file(src);
}

} // namespace difforge
