// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "difforge/catalog.hpp"
#include "difforge/designs.hpp"
#include "difforge/lifting.hpp"
#include "difforge/ooc.hpp"

using namespace difforge;

namespace {

int failures = 0;

void report(int n, const std::string& what, bool ok, const std::string& detail,
            double secs)
{
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << " (" << what
              << "): " << detail << " [" << secs << "s]\n";
    if (!ok) ++failures;
}

void run(int n, const std::string& what,
         const std::function<std::pair<bool, std::string>()>& body)
{
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        auto r = body();
        ok = r.first;
        detail = r.second;
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0).count();
    report(n, what, ok, detail, secs);
}

Design bibd31()
{
    RelativeDifferenceFamily df;
    df.group = AbelianGroup({31});
    df.forbidden = {0};
    df.base_blocks = {catalog_get("bibd/31-6-1").bibd_base};
    df.k = 6;
    return develop(df);
}

FiniteField field_from_poly(const char* poly_id)
{
    const auto& e = catalog_get(poly_id);
    return FiniteField(e.poly_p, 2, e.poly);
}

} // namespace

int main()
{
    std::cout.setf(std::ios::unitbuf);

    run(1, "stored family verification", [] {
        int n = 0, patterns = 0;
        for (const auto& id : catalog_list("sdf")) {
            const auto& s = *catalog_get(id).sdf;
            if (!verify_sdf(s).ok) return std::pair{false, id + " fails verify_sdf"};
            ++n;
            if (s.pattern) {
                if (!pattern_check_type2(s) && !pattern_check_type4(s))
                    return std::pair{false, id + " fails both pattern checks"};
                ++patterns;
            }
        }
        std::ostringstream os;
        os << n << " families verified, " << patterns << " pattern checks";
        return std::pair{true, os.str()};
    });

    run(2, "explicit relative families", [] {
        int n = 0;
        for (const auto& id : catalog_list("df")) {
            const auto& d = *catalog_get(id).df;
            auto v = verify_relative_df(d);
            if (!v.ok) return std::pair{false, id + " fails verify_relative_df"};
            if (d.lambda != 1) return std::pair{false, id + " has lambda != 1"};
            ++n;
        }
        std::ostringstream os;
        os << n << " families verified with lambda=1";
        return std::pair{true, os.str()};
    });

    run(3, "lifting round-trip over all asserted prime powers", [] {
        struct Inst { const char* sdf; std::int64_t p; int e; };
        std::vector<Inst> insts;
        auto add = [&](const char* sdf, std::initializer_list<std::int64_t> qs) {
            for (auto q : qs) insts.push_back({sdf, q, 1});
        };
        add("sdf/z2-5-20", {41, 61});
        add("sdf/z12-5-20", {41, 61});
        add("sdf/z10-5-12", {13, 37, 61, 73, 97});
        for (const char* s : {"sdf/z25-6-6", "sdf/z30-6-6", "sdf/z35-6-6",
                              "sdf/z45-6-6"})
            add(s, {13, 19, 31, 37, 43, 61, 67, 73, 79, 97});
        add("sdf/z5-6-12", {61, 73, 97});  // 13 impossible, 37 has an explicit family
        add("sdf/z15-6-12", {37, 61, 73, 97});
        for (const char* s : {"sdf/z35-7-6", "sdf/z49-7-6"})
            add(s, {13, 19, 31, 37, 43, 61, 67, 73, 79, 97});
        add("sdf/z21-7-12", {37, 61, 73, 97});
        add("sdf/z63-8-8", {73, 89, 97});
        add("sdf/z81-9-8", {73, 89, 97});
        insts.push_back({"sdf/z30-6-6", 25, 2});
        insts.push_back({"sdf/z30-6-6", 49, 2});

        SolveOptions opts;
        opts.node_budget = 1'000'000'000; // (49, q=13) needs ~1.8e8 nodes
        for (const auto& i : insts) {
            const auto& s = *catalog_get(i.sdf).sdf;
            FiniteField f = i.e == 1
                ? FiniteField(i.p, 1)
                : field_from_poly(i.p == 25 ? "poly/gf25" : "poly/gf49");
            auto res = lift_search(s, f, opts);
            std::ostringstream at;
            at << i.sdf << " over q=" << f.q();
            if (res.status != SolveStatus::kFound)
                return std::pair{false, at.str() + ": no witness found"};
            if (!verify_type_witness(*res.witness, s, res.type_d))
                return std::pair{false, at.str() + ": witness rejected"};
            if (!verify_relative_df(*res.df).ok)
                return std::pair{false, at.str() + ": lifted family invalid"};
        }
        // the remaining in-range prime, q=41 for the 63-element family, is a
        // recorded exception: its family is explicit rather than lifted
        if (!verify_relative_df(*catalog_get("df/63x41-8").df).ok)
            return std::pair{false, std::string("explicit 63x41 family invalid")};
        std::ostringstream os;
        os << insts.size() << " lifts found, verified, and round-tripped";
        return std::pair{true, os.str()};
    });

    run(4, "no relative family over Z5 x F13 with k=6", [] {
        auto r = search_relative_df_exhaustive(AbelianGroup({5, 13}),
                                               {0, 13, 26, 39, 52}, 6,
                                               1'000'000'000);
        if (r.status != SearchStatus::kNone || !r.fully_explored)
            return std::pair{false, std::string("search did not certify nonexistence")};
        std::ostringstream os;
        os << "fully explored, " << r.nodes << " nodes";
        return std::pair{true, os.str()};
    });

    run(5, "no (81,9,1) code with one codeword", [] {
        auto r = search_ooc_exhaustive(81, 9);
        if (r.status != SearchStatus::kNone || !r.fully_explored)
            return std::pair{false, std::string("search did not certify nonexistence")};
        std::ostringstream os;
        os << "fully explored, " << r.nodes << " nodes";
        return std::pair{true, os.str()};
    });

    run(6, "6-GDDs of type 30^q for q in {7,13,25,49}", [] {
        auto check = [](const RelativeDifferenceFamily& df, std::int64_t q)
            -> std::pair<bool, std::string> {
            auto gdd = develop(df);
            std::ostringstream os;
            os << "30^" << q;
            if (group_type(gdd) != os.str())
                return {false, "wrong group type " + group_type(gdd)};
            if (!verify_gdd(gdd, {6}).ok) return {false, os.str() + " fails pair coverage"};
            return {true, ""};
        };
        auto r7 = check(df_to_product(*catalog_get("df/30x7-6").df, 30, 7), 7);
        if (!r7.first) return r7;
        const auto& s = *catalog_get("sdf/z30-6-6").sdf;
        for (std::int64_t q : {13, 25, 49}) {
            FiniteField f = q == 13 ? FiniteField(13, 1)
                          : field_from_poly(q == 25 ? "poly/gf25" : "poly/gf49");
            auto out = lift_search(s, f);
            if (out.status != SolveStatus::kFound)
                return std::pair{false, "no lift at q=" + std::to_string(q)};
            auto rq = check(*out.df, q);
            if (!rq.first) return rq;
        }
        return std::pair{true, std::string("types 30^7, 30^13, 30^25, 30^49 verified")};
    });

    run(7, "rotational designs on 211 points", [] {
        auto b = bibd31();
        if (!verify_bibd(b, 6).ok)
            return std::pair{false, std::string("base design fails")};
        auto p3 = catalog_get("perm/31-order3").permutation;
        auto p5 = catalog_get("perm/31-order5").permutation;
        if (!is_automorphism(b, p3) || !is_automorphism(b, p5))
            return std::pair{false, std::string("stored permutation not an automorphism")};
        if (cycle_structure(p3) !=
            std::vector<std::int64_t>{1, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3})
            return std::pair{false, std::string("order-3 cycle structure wrong")};
        if (cycle_structure(p5) != std::vector<std::int64_t>{1, 5, 5, 5, 5, 5, 5})
            return std::pair{false, std::string("order-5 cycle structure wrong")};
        auto dfz = df_to_product(*catalog_get("df/30x7-6").df, 30, 7);
        for (int r : {6, 10}) {
            auto rb = rotational_bibd(7, r, dfz, b, r == 6 ? p5 : p3);
            if (!verify_bibd(rb.bibd, 6).ok)
                return std::pair{false, "r=" + std::to_string(r) + " design fails"};
            if (!is_r_rotational(rb.bibd, rb.gamma, r))
                return std::pair{false, "r=" + std::to_string(r) + " not rotational"};
        }
        return std::pair{true, std::string("both rotational (211,6,1) designs verified")};
    });

    run(8, "optimal optical orthogonal codes", [] {
        auto out = lift_search(*catalog_get("sdf/z10-5-12").sdf, FiniteField(13, 1));
        if (out.status != SolveStatus::kFound)
            return std::pair{false, std::string("no lift for the 130-point code")};
        struct Want { OpticalOrthogonalCode c; std::int64_t v; };
        std::vector<Want> codes = {
            {compose_ooc(*out.df, {10, 5, {}}), 130},
            {compose_ooc(*catalog_get("df/35x7-6").df,
                         {35, 6, {catalog_get("ooc/filler-35-6").filler}}), 245},
            {compose_ooc(*catalog_get("df/63x41-8").df,
                         {63, 8, {catalog_get("ooc/filler-63-8").filler}}), 2583},
        };
        for (const auto& w : codes) {
            if (w.c.v != w.v)
                return std::pair{false, "order mismatch at v=" + std::to_string(w.v)};
            if (!is_optimal_ooc(w.c))
                return std::pair{false, "code of order " + std::to_string(w.v) +
                                            " not optimal"};
        }
        return std::pair{true, std::string("(130,5,1), (245,6,1), (2583,8,1) all optimal")};
    });

    run(9, "difference-avoiding relabelings vs brute force", [] {
        auto brute = [](std::int64_t r, std::int64_t a,
                        const std::vector<std::int64_t>& alpha) {
            std::vector<std::int64_t> pi(static_cast<std::size_t>(r));
            std::iota(pi.begin(), pi.end(), 0);
            do {
                bool ok = true;
                for (std::int64_t x = 0; x < r && ok; ++x)
                    ok = (pi[static_cast<std::size_t>(
                              alpha[static_cast<std::size_t>(x)])] -
                              pi[static_cast<std::size_t>(x)] + r) % r != a;
                if (ok) return true;
            } while (std::next_permutation(pi.begin(), pi.end()));
            return false;
        };
        for (std::int64_t r : {5, 6}) {
            std::vector<std::int64_t> alpha(static_cast<std::size_t>(r));
            std::iota(alpha.begin(), alpha.end(), 0);
            do {
                for (std::int64_t a = 0; a < r; ++a) {
                    bool exists = brute(r, a, alpha);
                    bool got = true;
                    std::vector<std::int64_t> pi;
                    try {
                        pi = fix_permutation(r, a, alpha);
                    } catch (const std::logic_error&) {
                        got = false;
                    }
                    if (got != exists)
                        return std::pair{false, "disagreement at r=" +
                                                    std::to_string(r) +
                                                    " a=" + std::to_string(a)};
                    for (std::int64_t x = 0; got && x < r; ++x)
                        if ((pi[static_cast<std::size_t>(
                                 alpha[static_cast<std::size_t>(x)])] -
                             pi[static_cast<std::size_t>(x)] + r) % r == a)
                            return std::pair{false, std::string("returned relabeling violates the constraint")};
                }
            } while (std::next_permutation(alpha.begin(), alpha.end()));
        }
        return std::pair{true, std::string("120*5 + 720*6 cases agree with brute force")};
    });

    run(10, "field-size bound evaluation", [] {
        for (std::int64_t m = 1; m <= 20; ++m)
            if (!QBound(1, m).equals_integer(m))
                return std::pair{false, "Q(1," + std::to_string(m) + ") != " +
                                            std::to_string(m)};
        if (QBound(6, 4).u() != 3025)
            return std::pair{false, std::string("U(6,4) != 3025")};
        for (std::int64_t d = 2; d <= 12; ++d)
            for (std::int64_t m = 2; m <= 12; ++m)
                if (!(QBound(d - 1, m) < QBound(d, m)) ||
                    !(QBound(d, m - 1) < QBound(d, m)))
                    return std::pair{false, "monotonicity fails at d=" +
                                                std::to_string(d) +
                                                " m=" + std::to_string(m)};
        return std::pair{true, std::string("Q(1,m)=m, U(6,4)=3025, grid monotone")};
    });

    run(11, "parameterized family generators", [] {
        std::vector<std::pair<std::string, StrongDifferenceFamily>> gens;
        for (std::int64_t p : {5, 13, 17}) {
            gens.emplace_back("paley1(" + std::to_string(p) + ")", paley_sdf_1(p));
        }
        for (std::int64_t p : {7, 11, 19})
            gens.emplace_back("paley2(" + std::to_string(p) + ")", paley_sdf_2(p));
        for (std::int64_t p : {5, 13})
            gens.emplace_back("paley3(" + std::to_string(p) + ")", paley_sdf_3(p));
        gens.emplace_back("twinprime(3)", twin_prime_sdf(3));
        gens.emplace_back("twinprime(5)", twin_prime_sdf(5));
        gens.emplace_back("singer(2,3)", singer_sdf(2, 3));
        gens.emplace_back("singer(3,3)", singer_sdf(3, 3));
        for (const auto& [name, s] : gens)
            if (!verify_sdf(s).ok) return std::pair{false, name + " fails"};
        std::ostringstream os;
        os << gens.size() << " generated families verified";
        return std::pair{true, os.str()};
    });

    std::cout << (failures == 0 ? "ALL CRITERIA PASS\n"
                                : std::to_string(failures) + " CRITERIA FAILED\n");
    return failures == 0 ? 0 : 1;
}
