#include <cstdlib>
#include <fstream>
#include <iostream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "difforge/catalog.hpp"
#include "difforge/designs.hpp"
#include "difforge/io.hpp"
#include "difforge/lifting.hpp"
#include "difforge/ooc.hpp"

using namespace difforge;
using nlohmann::json;

namespace {

constexpr int kOk = 0;       // verified / found
constexpr int kFail = 1;     // verification failed / NONE
constexpr int kBadInput = 2; // malformed input
constexpr int kUnknown = 3;  // budget exhausted

struct Output {
    bool as_json = false;
    json j;
    std::string text;
    void emit() const
    {
        if (as_json)
            std::cout << j.dump(2) << "\n";
        else if (!text.empty())
            std::cout << text << "\n";
    }
};

void write_or_print(const json& j, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << dump_design_file(j);
    } else {
        std::ofstream out(out_path);
        out << dump_design_file(j);
    }
}

std::vector<std::int64_t> parse_int_list(const std::string& s)
{
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoll(tok));
    return out;
}

// Cycle notation as printed: "(1 13 6)(2 23 29)...". Unlisted points are fixed.
Permutation parse_cycles(const std::string& s, std::int64_t n)
{
    Permutation img(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = i;
    std::size_t pos = 0;
    while (pos < s.size()) {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == ',')) ++pos;
        if (pos >= s.size()) break;
        if (s[pos] != '(') throw std::invalid_argument("expected '(' in cycle notation");
        auto close = s.find(')', pos);
        if (close == std::string::npos) throw std::invalid_argument("unbalanced cycle");
        std::stringstream ss(s.substr(pos + 1, close - pos - 1));
        std::vector<std::int64_t> cyc;
        std::int64_t x;
        while (ss >> x) cyc.push_back(x);
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            auto from = cyc[i], to = cyc[(i + 1) % cyc.size()];
            if (from < 0 || from >= n) throw std::invalid_argument("cycle entry out of range");
            img[static_cast<std::size_t>(from)] = to;
        }
        pos = close + 1;
    }
    return img;
}

std::int64_t env_budget(std::int64_t fallback) { return search_node_budget(fallback); }

int cmd_verify(const std::string& src, bool as_json)
{
    json j;
    try {
        j = resolve_design_source(src);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }
    FileVerdict v;
    try {
        v = verify_design_file(j);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }
    Output o{as_json};
    o.j = {{"verified", v.ok}, {"note", v.note}};
    o.text = (v.ok ? "verified" : "FAILED") + (v.note.empty() ? "" : ": " + v.note);
    o.emit();
    return v.ok ? kOk : kFail;
}

int cmd_lift(const std::string& sdf_id, std::int64_t q, std::int64_t p, int e,
             const std::string& modulus, std::optional<std::uint64_t> seed,
             const std::string& out_path, bool as_json)
{
    const StrongDifferenceFamily* s = nullptr;
    try {
        s = &*catalog_get(sdf_id).sdf;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kBadInput;
    }
    FiniteField f;
    try {
        if (p > 0 && e > 0) {
            std::optional<std::vector<std::int64_t>> mod;
            if (!modulus.empty()) mod = parse_int_list(modulus);
            f = FiniteField(p, e, mod);
        } else {
            auto split = prime_power_split(q);
            if (!split) throw std::invalid_argument("q is not a prime power");
            f = FiniteField(split->first, split->second);
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kBadInput;
    }
    SolveOptions opts;
    opts.seed = seed;
    opts.node_budget = env_budget(opts.node_budget);
    LiftResult r;
    try {
        r = lift_search(*s, f, opts);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kBadInput;
    }
    Output o{as_json};
    const char* st = r.status == SolveStatus::kFound    ? "found"
                     : r.status == SolveStatus::kUnsat ? "unsat"
                                                       : "unknown";
    o.j = {{"status", st}, {"nodes", r.nodes}, {"type_d", r.type_d}};
    o.text = std::string(st) + " (nodes " + std::to_string(r.nodes) + ")";
    if (r.df) {
        auto jd = to_design_file(*r.df);
        if (as_json)
            o.j["df"] = jd;
        else
            write_or_print(jd, out_path);
    }
    o.emit();
    return r.status == SolveStatus::kFound    ? kOk
           : r.status == SolveStatus::kUnsat ? kFail
                                             : kUnknown;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"difforge: strong difference families, their lifts, and applications"};
    app.require_subcommand(1);
    bool as_json = false;
    int threads = 0;
    std::string format = "text";
    app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--threads", threads, "worker cap (runs are deterministic)");

    // verify
    std::string verify_src;
    auto* verify = app.add_subcommand("verify", "verify a design file or catalog object");
    verify->add_option("source", verify_src)->required();

    // catalog
    auto* cat = app.add_subcommand("catalog", "browse the built-in object catalog");
    std::string cat_kind, cat_id;
    auto* cat_list = cat->add_subcommand("list");
    cat_list->add_option("--kind", cat_kind);
    auto* cat_show = cat->add_subcommand("show");
    cat_show->add_option("id", cat_id)->required();
    auto* cat_export = cat->add_subcommand("export");
    cat_export->add_option("id", cat_id)->required();

    // lift
    auto* lift = app.add_subcommand("lift", "search a witness over G x F_q and lift it");
    std::string lift_sdf, lift_modulus, lift_out;
    std::int64_t lift_q = 0, lift_p = 0;
    int lift_e = 0;
    std::int64_t lift_seed = -1;
    lift->add_option("--sdf", lift_sdf)->required();
    lift->add_option("--q", lift_q);
    lift->add_option("--p", lift_p);
    lift->add_option("--e", lift_e);
    lift->add_option("--modulus", lift_modulus, "field modulus coefficients, ascending");
    lift->add_option("--seed", lift_seed);
    lift->add_option("--out", lift_out);

    // construct
    auto* con = app.add_subcommand("construct", "run one of the parameterized constructions");
    std::string con_what, con_df, con_filler, con_out;
    std::int64_t con_p = 0, con_q = 0, con_r = 6;
    int con_d = 0;
    con->add_option("what", con_what,
                    "paley1|paley2|paley3|twinprime|singer|gdd-dev|rotational-bibd|ooc-compose")
        ->required();
    con->add_option("--p", con_p);
    con->add_option("--d", con_d);
    con->add_option("--q", con_q);
    con->add_option("--r", con_r);
    con->add_option("--df", con_df, "design file path or catalog:// URI");
    con->add_option("--filler", con_filler, "catalog filler id or comma list");
    con->add_option("--out", con_out);

    // search
    auto* sea = app.add_subcommand("search", "exhaustive searches");
    auto* sea_ooc = sea->add_subcommand("ooc");
    std::int64_t so_v = 0;
    int so_k = 0;
    sea_ooc->add_option("--v", so_v)->required();
    sea_ooc->add_option("--k", so_k)->required();
    auto* sea_df = sea->add_subcommand("df");
    std::string sd_group, sd_forbidden;
    int sd_k = 0;
    std::int64_t sd_seed = -1;
    sea_df->add_option("--group", sd_group, "cyclic orders, comma separated")->required();
    sea_df->add_option("--k", sd_k)->required();
    sea_df->add_option("--forbidden", sd_forbidden,
                       "encoded subgroup elements (default: first factor x {0})");
    sea_df->add_option("--seed", sd_seed);

    // qbound
    auto* qb = app.add_subcommand("qbound", "lower bound on usable prime powers");
    std::int64_t qb_d = 0, qb_m = 0;
    qb->add_option("--d", qb_d)->required();
    qb->add_option("--m", qb_m)->required();

    // fixperm
    auto* fp = app.add_subcommand("fixperm", "difference-avoiding relabeling");
    std::int64_t fp_r = 0, fp_a = 0;
    std::string fp_alpha;
    fp->add_option("--r", fp_r)->required();
    fp->add_option("--a", fp_a)->required();
    fp->add_option("--alpha", fp_alpha, "permutation in cycle notation")->required();

    // let --format/--threads appear after a subcommand as well
    std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* a) {
        for (auto* s : a->get_subcommands([](const CLI::App*) { return true; })) {
            s->fallthrough();
            allow_fallthrough(s);
        }
    };
    allow_fallthrough(&app);

    CLI11_PARSE(app, argc, argv);
    as_json = (format == "json");

    try {
        if (*verify) return cmd_verify(verify_src, as_json);

        if (*cat_list) {
            auto ids = catalog_list(cat_kind);
            if (as_json) {
                std::cout << json(ids).dump(2) << "\n";
            } else {
                for (const auto& id : ids) std::cout << id << "\n";
            }
            return kOk;
        }
        if (*cat_show) {
            const auto& e = catalog_get(cat_id);
            json j{{"id", e.id}, {"kind", e.kind}, {"source", e.source}};
            if (e.type_label) j["type"] = e.type_label;
            std::cout << j.dump(2) << "\n";
            return kOk;
        }
        if (*cat_export) {
            std::cout << dump_design_file(export_catalog_entry(catalog_get(cat_id)));
            return kOk;
        }

        if (*lift) return cmd_lift(lift_sdf, lift_q, lift_p, lift_e, lift_modulus,
                               lift_seed < 0 ? std::nullopt : std::make_optional<std::uint64_t>(static_cast<std::uint64_t>(lift_seed)),
                                   lift_out, as_json);

        if (*con) {
            if (con_what == "paley1" || con_what == "paley2" || con_what == "paley3" ||
                con_what == "twinprime") {
                auto s = con_what == "paley1"      ? paley_sdf_1(con_p)
                         : con_what == "paley2"   ? paley_sdf_2(con_p)
                         : con_what == "paley3"   ? paley_sdf_3(con_p)
                                                  : twin_prime_sdf(con_p);
                write_or_print(to_design_file(s), con_out);
                return kOk;
            }
            if (con_what == "singer") {
                write_or_print(to_design_file(singer_sdf(con_p, con_d)), con_out);
                return kOk;
            }
            if (con_what == "gdd-dev") {
                auto df = df_from_design_file(resolve_design_source(con_df));
                if (df.group.orders().size() == 1 && con_q > 0)
                    df = df_to_product(df, df.group.order() / con_q, con_q);
                auto d = develop(df);
                auto r = verify_gdd(d, {df.k});
                if (!r.ok) return kFail;
                write_or_print(to_design_file(d), con_out);
                return kOk;
            }
            if (con_what == "rotational-bibd") {
                if (con_q <= 0) throw CLI::ValidationError("--q is required");
                RelativeDifferenceFamily df;
                if (!con_df.empty()) {
                    df = df_from_design_file(resolve_design_source(con_df));
                    if (df.group.orders().size() == 1) df = df_to_product(df, 30, con_q);
                } else if (con_q == 7) {
                    df = df_to_product(*catalog_get("df/30x7-6").df, 30, 7);
                } else {
                    auto split = prime_power_split(con_q);
                    if (!split) throw CLI::ValidationError("q must be a prime power");
                    auto lr = lift_search(*catalog_get("sdf/z30-6-6").sdf,
                                          FiniteField(split->first, split->second), {});
                    if (!lr.df) return lr.status == SolveStatus::kUnsat ? kFail : kUnknown;
                    df = *lr.df;
                }
                RelativeDifferenceFamily base;
                base.group = AbelianGroup({31});
                base.forbidden = {0};
                base.base_blocks = {catalog_get("bibd/31-6-1").bibd_base};
                base.k = 6;
                auto bibd31 = develop(base);
                const auto& rho = catalog_get(con_r == 6 ? "perm/31-order5" : "perm/31-order3")
                                      .permutation;
                auto rb = rotational_bibd(con_q, con_r, df, bibd31, rho);
                if (!verify_bibd(rb.bibd, 6).ok || !is_r_rotational(rb.bibd, rb.gamma, con_r))
                    return kFail;
                write_or_print(to_design_file(rb.bibd), con_out);
                return kOk;
            }
            if (con_what == "ooc-compose") {
                auto df = df_from_design_file(resolve_design_source(con_df));
                OpticalOrthogonalCode filler;
                filler.v = static_cast<std::int64_t>(df.forbidden.size());
                filler.k = df.k;
                if (!con_filler.empty()) {
                    if (con_filler.rfind("catalog://", 0) == 0) {
                        const auto& e = catalog_get(con_filler.substr(10));
                        filler.v = e.filler_v;
                        filler.k = e.filler_k;
                        if (!e.filler.empty()) filler.codewords.push_back(e.filler);
                    } else {
                        filler.codewords.push_back(parse_int_list(con_filler));
                    }
                }
                auto c = compose_ooc(df, filler);
                if (!is_optimal_ooc(c)) return kFail;
                write_or_print(to_design_file(c), con_out);
                return kOk;
            }
            throw CLI::ValidationError("unknown construction: " + con_what);
        }

        if (*sea_ooc) {
            auto r = search_ooc_exhaustive(so_v, so_k, env_budget(2'000'000'000));
            Output o{as_json};
            const char* st = r.status == SearchStatus::kFound   ? "found"
                             : r.status == SearchStatus::kNone ? "none"
                                                               : "unknown";
            o.j = {{"status", st}, {"nodes", r.nodes}, {"fully_explored", r.fully_explored}};
            o.text = std::string(st) + (r.fully_explored ? " (fully explored)" : "") +
                     " nodes " + std::to_string(r.nodes);
            if (r.code) {
                if (as_json)
                    o.j["ooc"] = to_design_file(*r.code);
                else
                    std::cout << dump_design_file(to_design_file(*r.code));
            }
            o.emit();
            return r.status == SearchStatus::kFound   ? kOk
                   : r.status == SearchStatus::kNone ? kFail
                                                     : kUnknown;
        }
        if (*sea_df) {
            AbelianGroup g(parse_int_list(sd_group));
            std::vector<std::int64_t> forbidden;
            if (!sd_forbidden.empty()) {
                forbidden = parse_int_list(sd_forbidden);
            } else {
                auto os = g.orders();
                std::int64_t step = g.order() / os[0];
                for (std::int64_t i = 0; i < os[0]; ++i) forbidden.push_back(i * step);
            }
            auto r = search_relative_df_exhaustive(
                g, forbidden, sd_k, env_budget(2'000'000'000),
                sd_seed < 0 ? std::nullopt
                            : std::make_optional<std::uint64_t>(
                                  static_cast<std::uint64_t>(sd_seed)));
            Output o{as_json};
            const char* st = r.status == SearchStatus::kFound   ? "found"
                             : r.status == SearchStatus::kNone ? "none"
                                                               : "unknown";
            o.j = {{"status", st}, {"nodes", r.nodes}, {"fully_explored", r.fully_explored}};
            o.text = std::string(st) + (r.fully_explored ? " (fully explored)" : "") +
                     " nodes " + std::to_string(r.nodes);
            if (r.df) {
                if (as_json)
                    o.j["df"] = to_design_file(*r.df);
                else
                    std::cout << dump_design_file(to_design_file(*r.df));
            }
            o.emit();
            return r.status == SearchStatus::kFound   ? kOk
                   : r.status == SearchStatus::kNone ? kFail
                                                     : kUnknown;
        }

        if (*qb) {
            QBound b(qb_d, qb_m);
            Output o{as_json};
            if (qb_d == 1) {
                o.j = {{"q", qb_m}};
                o.text = std::to_string(qb_m);
            } else {
                o.j = {{"q", b.value()}};
                o.text = std::to_string(b.value());
            }
            o.emit();
            return kOk;
        }

        if (*fp) {
            auto alpha = parse_cycles(fp_alpha, fp_r);
            auto pi = fix_permutation(fp_r, fp_a, alpha);
            Output o{as_json};
            o.j = {{"pi", pi}};
            std::string t = "[";
            for (auto x : pi) t += std::to_string(x) + " ";
            t.back() = ']';
            o.text = t;
            o.emit();
            return kOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }
    return kBadInput;
}
