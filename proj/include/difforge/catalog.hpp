#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "differences.hpp"
#include "field.hpp"
#include "group.hpp"
#include "lifting.hpp"

namespace difforge {

struct CatalogEntry {
    std::string id;
    std::string kind; // sdf | df | witness | ooc_filler | bibd | automorphism | primitive_poly
    std::string source;
    int type_label = 0;         // declared type-d for SDF entries (0 = unspecified)
    bool type_verified = false; // machine-checkable pattern present (d in {2,4})

    std::optional<StrongDifferenceFamily> sdf;
    std::optional<RelativeDifferenceFamily> df;
    std::optional<WitnessCollection> witness;
    std::int64_t witness_type_d = 0;
    std::string witness_sdf_id;

    std::vector<std::int64_t> filler; // ooc_filler codeword (may be empty)
    std::int64_t filler_v = 0;
    int filler_k = 0;

    Block bibd_base;            // bibd: base block developed over Z_v
    std::int64_t bibd_v = 0;
    std::vector<std::int64_t> permutation; // automorphism image array

    std::vector<std::int64_t> poly; // primitive_poly coefficients, ascending
    std::int64_t poly_p = 0;
};

// ---------------------------------------------------------------------------
// Parameterized generators.

inline StrongDifferenceFamily paley_sdf_1(std::int64_t p)
{
    auto split = prime_power_split(p);
    if (!split || p % 2 == 0) throw std::invalid_argument("need an odd prime power");
    FiniteField f(split->first, split->second);
    StrongDifferenceFamily s;
    s.group = f.additive_group();
    s.k = static_cast<int>(p);
    s.mu = p - 1;
    Block b{0};
    for (auto x : f.cyclotomic_class(2, 0)) { b.push_back(x); b.push_back(x); }
    s.base_blocks.push_back(std::move(b));
    SdfPattern pat;
    pat.sigma1 = {0};
    s.pattern = pat;
    if (!verify_sdf(s).ok) throw std::logic_error("paley_sdf_1 failed verification");
    return s;
}

inline StrongDifferenceFamily paley_sdf_2(std::int64_t p)
{
    auto split = prime_power_split(p);
    if (!split || p % 4 != 3) throw std::invalid_argument("need a prime power p = 3 (mod 4)");
    FiniteField f(split->first, split->second);
    StrongDifferenceFamily s;
    s.group = f.additive_group();
    s.k = static_cast<int>(p + 1);
    s.mu = p + 1;
    Block b{0, 0};
    for (auto x : f.cyclotomic_class(2, 0)) { b.push_back(x); b.push_back(x); }
    s.base_blocks.push_back(std::move(b));
    SdfPattern pat;
    pat.sigma1 = {0};
    s.pattern = pat;
    if (!verify_sdf(s).ok) throw std::logic_error("paley_sdf_2 failed verification");
    return s;
}

inline StrongDifferenceFamily paley_sdf_3(std::int64_t p)
{
    auto split = prime_power_split(p);
    if (!split || p % 2 == 0) throw std::invalid_argument("need an odd prime power");
    FiniteField f(split->first, split->second);
    StrongDifferenceFamily s;
    s.group = f.additive_group();
    s.k = static_cast<int>(p + 1);
    s.mu = 2 * p + 2;
    for (int i = 0; i < 2; ++i) {
        Block b{0, 0};
        for (auto x : f.cyclotomic_class(2, i)) { b.push_back(x); b.push_back(x); }
        s.base_blocks.push_back(std::move(b));
    }
    SdfPattern pat;
    pat.sigma1 = {0, 1};
    s.pattern = pat;
    if (!verify_sdf(s).ok) throw std::logic_error("paley_sdf_3 failed verification");
    return s;
}

inline StrongDifferenceFamily twin_prime_sdf(std::int64_t p)
{
    auto s1 = prime_power_split(p);
    auto s2 = prime_power_split(p + 2);
    if (p <= 2 || !s1 || !s2)
        throw std::invalid_argument("need twin prime powers p, p+2 with p > 2");
    FiniteField fa(s1->first, s1->second);
    FiniteField fb(s2->first, s2->second);
    AbelianGroup g = fa.additive_group().product(fb.additive_group());
    std::int64_t q2 = fb.q();
    std::vector<char> in_d0(static_cast<std::size_t>(g.order()), 0);
    for (int i = 0; i < 2; ++i)
        for (auto a : fa.cyclotomic_class(2, i))
            for (auto b : fb.cyclotomic_class(2, i))
                in_d0[static_cast<std::size_t>(a * q2 + b)] = 1;
    for (std::int64_t a = 0; a < fa.q(); ++a) in_d0[static_cast<std::size_t>(a * q2)] = 1;
    Block d0;
    for (std::int64_t x = 0; x < g.order(); ++x)
        if (in_d0[static_cast<std::size_t>(x)]) d0.push_back(x);
    // difference-set check: every nonzero element exactly (p(p+2)-3)/4 times
    std::int64_t lambda = (p * (p + 2) - 3) / 4;
    auto delta = delta_block(g, d0);
    for (std::int64_t x = 1; x < g.order(); ++x)
        if (delta.counts[static_cast<std::size_t>(x)] != lambda)
            throw std::logic_error("twin prime construction is not a difference set");
    StrongDifferenceFamily s;
    s.group = g;
    s.k = static_cast<int>(p * (p + 2) + 1);
    s.mu = p * (p + 2) + 1;
    Block b;
    for (std::int64_t x = 0; x < g.order(); ++x)
        if (!in_d0[static_cast<std::size_t>(x)]) { b.push_back(x); b.push_back(x); }
    s.base_blocks.push_back(std::move(b));
    if (!verify_sdf(s).ok) throw std::logic_error("twin_prime_sdf failed verification");
    return s;
}

inline StrongDifferenceFamily singer_sdf(std::int64_t p, std::int64_t d)
{
    auto split = prime_power_split(p);
    if (!split || d < 3) throw std::invalid_argument("need a prime power p and d >= 3");
    std::int64_t pd = 1;
    for (std::int64_t i = 0; i < d; ++i) {
        pd *= p;
        if (pd > (std::int64_t{1} << 20)) throw std::invalid_argument("p^d too large");
    }
    if (split->second != 1) throw std::invalid_argument("extension-field base out of scope");
    FiniteField big(p, d);
    std::int64_t v = (pd - 1) / (p - 1);
    std::vector<char> in_d0(static_cast<std::size_t>(v), 0);
    for (std::int64_t x = 1; x < pd; ++x)
        if (big.trace(x) == 0)
            in_d0[static_cast<std::size_t>(big.discrete_log(x) % v)] = 1;
    Block d0;
    for (std::int64_t x = 0; x < v; ++x)
        if (in_d0[static_cast<std::size_t>(x)]) d0.push_back(x);
    AbelianGroup g({v});
    std::int64_t lambda = v >= 3 ? ((pd / (p * p)) - 1) / (p - 1) : 0;
    auto delta = delta_block(g, d0);
    for (std::int64_t x = 1; x < v; ++x)
        if (delta.counts[static_cast<std::size_t>(x)] != lambda)
            throw std::logic_error("trace-zero set is not a difference set");
    StrongDifferenceFamily s;
    s.group = g;
    s.k = static_cast<int>(pd);
    s.mu = pd * (p - 1);
    Block b;
    for (std::int64_t x = 0; x < v; ++x)
        if (!in_d0[static_cast<std::size_t>(x)])
            for (std::int64_t c = 0; c < p; ++c) b.push_back(x);
    s.base_blocks.push_back(std::move(b));
    if (!verify_sdf(s).ok) throw std::logic_error("singer_sdf failed verification");
    return s;
}

// The one-parameter (Z4, 4, 6p) family, generated on demand for odd primes p > 3.
inline StrongDifferenceFamily sdf_z4_k4_6p(std::int64_t p)
{
    if (p <= 3 || !is_prime(p)) throw std::invalid_argument("need an odd prime p > 3");
    StrongDifferenceFamily s;
    s.group = AbelianGroup({4});
    s.k = 4;
    s.mu = 6 * p;
    auto rep = [&](Block b, std::int64_t times) {
        for (std::int64_t i = 0; i < times; ++i) s.base_blocks.push_back(b);
    };
    rep({0, 1, 2, 3}, (3 * p - 9) / 2);
    rep({0, 0, 0, 0}, (p - 5) / 2);
    rep({0, 1, 1, 1}, 2);
    rep({0, 0, 1, 2}, 3);
    rep({0, 0, 0, 1}, 1);
    rep({0, 0, 0, 2}, 1);
    if (!verify_sdf(s).ok) throw std::logic_error("z4 family failed verification");
    return s;
}

// ---------------------------------------------------------------------------
// Embedded data.

namespace detail {

inline StrongDifferenceFamily make_sdf(std::vector<std::int64_t> orders, int k, std::int64_t mu,
                                       std::vector<std::pair<Block, std::int64_t>> blocks,
                                       std::optional<SdfPattern> pat = std::nullopt)
{
    StrongDifferenceFamily s;
    s.group = AbelianGroup(std::move(orders));
    s.k = k;
    s.mu = mu;
    std::int64_t n = s.group.order();
    for (auto& [b, times] : blocks) {
        Block nb;
        for (auto x : b) nb.push_back(((x % n) + n) % n);
        for (std::int64_t i = 0; i < times; ++i) s.base_blocks.push_back(nb);
    }
    s.pattern = std::move(pat);
    return s;
}

inline RelativeDifferenceFamily make_cyclic_df(std::int64_t h, std::int64_t q, int k,
                                               std::vector<Block> plain,
                                               std::vector<std::pair<Block, std::int64_t>> scaled,
                                               std::int64_t exponents)
{
    // blocks in Z_{hq}, forbidden subgroup = q * Z_h
    RelativeDifferenceFamily d;
    d.group = AbelianGroup({h * q});
    d.k = k;
    d.lambda = 1;
    for (std::int64_t i = 0; i < h; ++i) d.forbidden.push_back(i * q);
    auto norm = [&](Block b) {
        for (auto& x : b) x = ((x % (h * q)) + h * q) % (h * q);
        std::sort(b.begin(), b.end());
        return b;
    };
    for (auto& b : plain) d.base_blocks.push_back(norm(b));
    for (auto& [b, m] : scaled) {
        std::int64_t factor = 1;
        for (std::int64_t i = 0; i < exponents; ++i) {
            Block nb;
            for (auto x : b) nb.push_back((x * factor) % (h * q));
            d.base_blocks.push_back(norm(nb));
            factor = (factor * m) % (h * q);
        }
    }
    return d;
}

// blocks over Z_h x F_q given as (g, field-element) pairs; encoded g*q + f
inline RelativeDifferenceFamily make_product_df(
    std::int64_t h, const FiniteField& f, int k,
    const std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>>& blocks,
    const std::vector<std::int64_t>& scalars)
{
    RelativeDifferenceFamily d;
    d.group = AbelianGroup({h}).product(f.additive_group());
    d.k = k;
    d.lambda = 1;
    for (std::int64_t i = 0; i < h; ++i) d.forbidden.push_back(i * f.q());
    for (auto s : scalars) {
        for (const auto& blk : blocks) {
            Block b;
            for (auto& [g, x] : blk) {
                std::int64_t gg = ((g % h) + h) % h;
                b.push_back(gg * f.q() + f.mul(x, s));
            }
            std::sort(b.begin(), b.end());
            d.base_blocks.push_back(std::move(b));
        }
    }
    return d;
}

inline std::vector<std::int64_t> perm_from_cycles(
    std::int64_t n, const std::vector<std::vector<std::int64_t>>& cycles)
{
    std::vector<std::int64_t> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    for (const auto& c : cycles)
        for (std::size_t i = 0; i < c.size(); ++i)
            img[static_cast<std::size_t>(c[i])] = c[(i + 1) % c.size()];
    return img;
}

} // namespace detail

class Catalog {
public:
    static const Catalog& instance()
    {
        static Catalog c;
        return c;
    }

    const CatalogEntry& get(const std::string& id) const
    {
        auto it = entries_.find(id);
        if (it == entries_.end()) throw std::out_of_range("unknown catalog id: " + id);
        return it->second;
    }

    bool contains(const std::string& id) const { return entries_.count(id) > 0; }

    std::vector<std::string> list(const std::string& kind = "") const
    {
        std::vector<std::string> ids;
        for (auto& [id, e] : entries_)
            if (kind.empty() || e.kind == kind) ids.push_back(id);
        return ids;
    }

private:
    Catalog()
    {
        load_example_sdfs();
        load_type2_table();
        load_type4_table();
        load_literature_table();
        load_explicit_dfs();
        load_witnesses();
        load_bibd();
        load_ooc_fillers();
        load_polys();
        validate();
    }

    void add_sdf(const std::string& id, StrongDifferenceFamily s, int type_label,
                 const std::string& source)
    {
        CatalogEntry e;
        e.id = id;
        e.kind = "sdf";
        e.source = source;
        e.type_label = type_label;
        e.type_verified = s.pattern.has_value();
        e.sdf = std::move(s);
        entries_[id] = std::move(e);
    }

    void add_df(const std::string& id, RelativeDifferenceFamily d, const std::string& source)
    {
        CatalogEntry e;
        e.id = id;
        e.kind = "df";
        e.source = source;
        e.df = std::move(d);
        entries_[id] = std::move(e);
    }

    void load_example_sdfs()
    {
        using detail::make_sdf;
        {
            SdfPattern p;
            p.sigma2 = {0, 1};
            add_sdf("sdf/z2-5-20",
                    make_sdf({2}, 5, 20, {{{0, 0, 1, 1, 1}, 1}, {{0, 1, 1, 1, 1}, 1}}, p), 2,
                    "two-block family over Z2");
        }
        {
            SdfPattern p;
            p.sigma1 = {0};
            p.sigma2 = {1};
            p.sigma3 = {2, 3, 4, 5};
            add_sdf("sdf/z10-5-12",
                    make_sdf({10}, 5, 12,
                             {{{0, 3, 3, 7, 7}, 1},
                              {{0, 0, 0, 5, 5}, 1},
                              {{0, 9, 6, 7, 8}, 2},
                              {{0, 8, 4, 6, 7}, 2}},
                             p),
                    2, "six-block family over Z10");
        }
        {
            SdfPattern p;
            p.sigma1 = {0};
            p.sigma2 = {1, 2, 3, 4, 5, 6, 7, 8};
            add_sdf("sdf/z45-5-4",
                    make_sdf({45}, 5, 4,
                             {{{0, 1, 1, -1, -1}, 1},
                              {{0, 3, 7, 13, 30}, 4},
                              {{0, 5, 14, 26, 34}, 4}},
                             p),
                    4, "nine-block family over Z45");
        }
    }

    void load_type2_table()
    {
        using detail::make_sdf;
        auto add = [&](const std::string& id, StrongDifferenceFamily s) {
            add_sdf(id, std::move(s), 2, "search table, type 2");
        };
        {
            SdfPattern p;
            p.sigma2 = {0, 1};
            p.sigma3 = {2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
            add("sdf/z12-5-20", make_sdf({12}, 5, 20,
                                         {{{0, 0, 0, 6, 6}, 1},
                                          {{0, 0, 0, 0, 6}, 1},
                                          {{0, 1, 2, 3, 4}, 2},
                                          {{0, 1, 2, 4, 5}, 2},
                                          {{0, 1, 3, 5, 8}, 2},
                                          {{0, 1, 4, 5, 8}, 2},
                                          {{0, 2, 4, 7, 9}, 2}},
                                         p));
        }
        {
            SdfPattern p;
            p.sigma1 = {0};
            p.sigma3 = {1, 2, 3, 4};
            add("sdf/z25-6-6", make_sdf({25}, 6, 6,
                                        {{{0, 0, 5, 5, 14, 14}, 1},
                                         {{0, 1, 2, 3, 6, 18}, 2},
                                         {{0, 2, 8, 12, 15, 19}, 2}},
                                        p));
        }
        {
            SdfPattern p;
            p.sigma1 = {0, 1};
            p.sigma3 = {2, 3, 4, 5};
            add("sdf/z30-6-6", make_sdf({30}, 6, 6,
                                        {{{0, 0, 6, 6, 16, 16}, 1},
                                         {{0, 15, 3, 18, 7, 22}, 1},
                                         {{0, 1, 2, 3, 8, 21}, 2},
                                         {{0, 2, 5, 9, 13, 18}, 2}},
                                        p));
        }
        {
            SdfPattern p;
            p.sigma1 = {0};
            p.sigma3 = {1, 2, 3, 4, 5, 6};
            add("sdf/z35-6-6", make_sdf({35}, 6, 6,
                                        {{{0, 0, 8, 8, 18, 18}, 1},
                                         {{0, 1, 2, 3, 5, 15}, 2},
                                         {{0, 3, 7, 14, 23, 29}, 2},
                                         {{0, 4, 9, 17, 23, 28}, 2}},
                                        p));
        }
        {
            SdfPattern p;
            p.sigma1 = {0};
            p.sigma3 = {1, 2, 3, 4, 5, 6, 7, 8};
            add("sdf/z45-6-6", make_sdf({45}, 6, 6,
                                        {{{0, 0, 10, 10, 26, 26}, 1},
                                         {{0, 1, 3, 11, 17, 31}, 2},
                                         {{0, 4, 9, 22, 30, 37}, 2},
                                         {{0, 1, 3, 7, 12, 25}, 4}},
                                        p));
        }
        {
            SdfPattern p;
            p.sigma1 = {0, 1};
            add("sdf/z5-6-12", make_sdf({5}, 6, 12,
                                        {{{0, 0, 1, 1, 2, 2}, 1}, {{0, 0, 2, 2, 4, 4}, 1}}, p));
        }
        {
            SdfPattern p;
            p.sigma1 = {0, 1};
            p.sigma3 = {2, 3, 4, 5};
            add("sdf/z15-6-12", make_sdf({15}, 6, 12,
                                         {{{0, 0, 3, 3, 8, 8}, 1},
                                          {{0, 0, 4, 4, 9, 9}, 1},
                                          {{0, 1, 2, 3, 4, 7}, 2},
                                          {{0, 1, 2, 4, 8, 10}, 2}},
                                         p));
        }
        {
            SdfPattern p;
            p.sigma1 = {0};
            p.sigma3 = {1, 2, 3, 4};
            add("sdf/z35-7-6", make_sdf({35}, 7, 6,
                                        {{{0, 7, 7, 17, 17, 30, 30}, 1},
                                         {{0, 1, 2, 3, 5, 21, 29}, 2},
                                         {{0, 3, 9, 13, 17, 24, 29}, 2}},
                                        p));
        }
        {
            SdfPattern p;
            p.sigma1 = {0};
            p.sigma3 = {1, 2, 3, 4, 5, 6};
            add("sdf/z49-7-6", make_sdf({49}, 7, 6,
                                        {{{0, 4, 4, 16, 16, 36, 36}, 1},
                                         {{0, 1, 3, 20, 28, 38, 43}, 2},
                                         {{0, 1, 3, 27, 31, 36, 42}, 4}},
                                        p));
        }
        {
            SdfPattern p;
            p.sigma1 = {0, 1};
            p.sigma3 = {2, 3, 4, 5};
            add("sdf/z21-7-12", make_sdf({21}, 7, 12,
                                         {{{0, 5, 5, 10, 10, 17, 17}, 1},
                                          {{0, 3, 3, 9, 9, 17, 17}, 1},
                                          {{0, 1, 2, 3, 4, 5, 11}, 2},
                                          {{0, 1, 3, 7, 11, 13, 16}, 2}},
                                         p));
        }
    }

    void load_type4_table()
    {
        using detail::make_sdf;
        {
            SdfPattern p;
            p.sigma1 = {0};
            p.sigma2 = {1, 2, 3, 4, 5, 6, 7, 8};
            add_sdf("sdf/z63-8-8",
                    make_sdf({63}, 8, 8,
                             {{{20, 20, -20, -20, 29, 29, -29, -29}, 1},
                              {{0, 1, 3, 7, 19, 34, 42, 53}, 4},
                              {{0, 1, 4, 6, 26, 36, 43, 51}, 4}},
                             p),
                    4, "search table, type 4");
        }
        {
            SdfPattern p;
            p.sigma1 = {0};
            p.sigma2 = {1, 2, 3, 4, 5, 6, 7, 8};
            add_sdf("sdf/z81-9-8",
                    make_sdf({81}, 9, 8,
                             {{{0, 4, 4, -4, -4, 37, 37, -37, -37}, 1},
                              {{0, 1, 4, 6, 17, 18, 38, 63, 72}, 4},
                              {{0, 2, 7, 27, 30, 38, 53, 59, 69}, 4}},
                             p),
                    4, "search table, type 4");
        }
    }

    void load_literature_table()
    {
        using detail::make_sdf;
        auto add = [&](const std::string& id, int type_label, StrongDifferenceFamily s) {
            add_sdf(id, std::move(s), type_label, "literature table (type label unverified)");
        };
        add("sdf/lit-z9-4-8", 2,
            make_sdf({9}, 4, 8, {{{0, 0, 5, 5}, 1}, {{0, 0, 3, 3}, 1}, {{0, 1, 3, 8}, 4}}));
        add("sdf/lit-z12-4-4", 2,
            make_sdf({12}, 4, 4,
                     {{{0, 0, 5, 5}, 1}, {{0, 2, 6, 8}, 1}, {{0, 1, 3, 4}, 1}, {{0, 8, 9, 11}, 1}}));
        add("sdf/lit-z4-5-20", 2,
            make_sdf({4}, 5, 20,
                     {{{0, 0, 1, 1, 2}, 1},
                      {{0, 0, 0, 1, 2}, 1},
                      {{3, 3, 2, 2, 1}, 1},
                      {{3, 3, 3, 2, 1}, 1}}));
        add("sdf/lit-z20-5-12", 2,
            make_sdf({20}, 5, 12,
                     {{{0, 1, 3, 9, 14}, 6},
                      {{0, 1, 4, 5, 8}, 2},
                      {{0, 1, 5, 13, 18}, 2},
                      {{0, 2, 2, 18, 18}, 1},
                      {{0, 0, 0, 10, 10}, 1}}));
        add("sdf/lit-z45-9-8", 2,
            make_sdf({45}, 9, 8,
                     {{{0, 2, 2, 15, 15, 23, 23, 33, 33}, 1},
                      {{0, 1, 4, 5, 6, 7, 13, 22, 33}, 2},
                      {{0, 2, 5, 11, 21, 25, 28, 36, 40}, 2}}));
        add("sdf/lit-z125-6-6", 2,
            make_sdf({125}, 6, 6,
                     {{{0, 0, 19, 19, 71, 71}, 1},
                      {{0, 10, 28, 51, 78, 97}, 2},
                      {{0, 3, 62, 75, 86, 110}, 2},
                      {{0, 5, 12, 58, 70, 112}, 2},
                      {{0, 7, 27, 44, 70, 96}, 2},
                      {{0, 1, 42, 93, 85, 45}, 2},
                      {{0, 1, 100, 104, 109, 88}, 2},
                      {{0, 1, 90, 81, 21, 32}, 2},
                      {{0, 3, 16, 40, 46, 50}, 2},
                      {{0, 2, 7, 29, 35, 68}, 2},
                      {{0, 2, 8, 57, 102, 116}, 2},
                      {{0, 2, 22, 32, 36, 96}, 2},
                      {{0, 8, 23, 38, 72, 86}, 2}}));
        add("sdf/lit-z4-4-12-t3", 3,
            make_sdf({4}, 4, 12, {{{0, 0, 1, 3}, 3}, {{0, 2, 2, 2}, 1}}));
        add("sdf/lit-z4-4-18-t3", 3,
            make_sdf({4}, 4, 18, {{{0, 1, 2, 3}, 3}, {{0, 0, 0, 1}, 2}, {{0, 0, 0, 2}, 1}}));
        add("sdf/lit-z6-4-8-t4", 4,
            make_sdf({6}, 4, 8, {{{0, 0, 1, 1}, 1}, {{0, 0, 2, 2}, 1}, {{0, 1, 3, 4}, 2}}));
        add("sdf/lit-z45-5-4-t4", 4,
            make_sdf({45}, 5, 4,
                     {{{0, 2, 5, 12, 23}, 4}, {{0, 1, 14, 20, 29}, 4}, {{0, 4, 4, -4, -4}, 1}}));
        add("sdf/lit-z119-8-8-t4", 4,
            make_sdf({119}, 8, 8,
                     {{{20, 20, -20, -20, 29, 29, -29, -29}, 1},
                      {{0, 1, 42, 28, 101, 97, 94, 114}, 4},
                      {{0, 1, 12, 23, 41, 85, 104, 106}, 4},
                      {{0, 2, 5, 17, 37, 47, 68, 76}, 4},
                      {{0, 4, 10, 38, 54, 62, 86, 93}, 4}}));
        add("sdf/lit-z2-3-12-t6", 6,
            make_sdf({2}, 3, 12, {{{0, 0, 0}, 1}, {{1, 1, 0}, 3}}));
        add("sdf/lit-z4-4-12-t6", 6,
            make_sdf({4}, 4, 12, {{{0, 0, 1, 2}, 3}, {{0, 0, 0, 1}, 1}}));
        add("sdf/lit-z8-4-6-t6", 6,
            make_sdf({8}, 4, 6, {{{0, 1, 3, 5}, 3}, {{0, 0, 0, 1}, 1}}));
        add("sdf/lit-z6-7-56-t7", 7,
            make_sdf({6}, 7, 56, {{{0, 1, 2, 3, 4, 5, 5}, 7}, {{0, 0, 0, 0, 0, 0, 0}, 1}}));
    }

    void load_explicit_dfs()
    {
        using detail::make_cyclic_df;
        using detail::make_product_df;
        {
            FiniteField f13(13, 1);
            auto c06 = f13.cyclotomic_class(6, 0); // {1, 12}
            auto df = make_product_df(
                10, f13, 5,
                {{{0, 0}, {9, 4}, {6, 10}, {7, 5}, {8, 6}},
                 {{0, 0}, {8, 2}, {4, 7}, {6, 12}, {7, 9}}},
                c06);
            // plus the two unscaled blocks
            auto fixed = make_product_df(10, f13, 5,
                                         {{{0, 0}, {3, 1}, {3, 12}, {7, 3}, {7, 10}},
                                          {{0, 0}, {0, 1}, {0, 4}, {5, 3}, {5, 8}}},
                                         {1});
            df.base_blocks.insert(df.base_blocks.end(), fixed.base_blocks.begin(),
                                  fixed.base_blocks.end());
            add_df("df/10x13-5", std::move(df), "explicit construction over Z10 x F13");
        }
        add_df("df/30x7-6",
               make_cyclic_df(30, 7, 6,
                              {{0, 11, 30, 111, 131, 171}, {0, 12, 27, 73, 148, 165}},
                              {{{0, 1, 3, 25, 34, 128}, 29}, {{0, 5, 37, 43, 53, 139}, 29}}, 2),
               "explicit cyclic construction");
        add_df("df/5x37-6",
               make_cyclic_df(5, 37, 6,
                              {{0, 4, 38, 95, 102, 138}, {0, 12, 29, 79, 109, 165}},
                              {{{0, 1, 3, 11, 42, 123}, 26}, {{0, 5, 19, 77, 145, 169}, 26}}, 2),
               "explicit cyclic construction");
        add_df("df/15x13-6",
               make_cyclic_df(15, 13, 6, {},
                              {{{0, 1, 3, 8, 18, 89}, 16}, {{0, 4, 42, 105, 141, 155}, 16}}, 3),
               "explicit cyclic construction");
        add_df("df/35x7-6",
               make_cyclic_df(35, 7, 6, {{0, 10, 30, 85, 130, 195}},
                              {{{0, 1, 3, 54, 158, 167}, 116}, {{0, 4, 22, 93, 118, 201}, 116}},
                              3),
               "explicit cyclic construction");
        add_df("df/45x7-6",
               make_cyclic_df(45, 7, 6, {},
                              {{{0, 1, 3, 11, 61, 244}, 16},
                               {{0, 4, 29, 135, 171, 278}, 16},
                               {{0, 5, 23, 78, 125, 164}, 16}},
                              3),
               "explicit cyclic construction");
        add_df("df/21x13-7",
               make_cyclic_df(21, 13, 7, {},
                              {{{0, 1, 3, 9, 88, 116, 135}, 16},
                               {{0, 4, 37, 86, 127, 204, 211}, 16}},
                              3),
               "explicit cyclic construction");
        {
            FiniteField f41(41, 1);
            auto c08 = f41.cyclotomic_class(8, 0);
            auto c02 = f41.cyclotomic_class(2, 0);
            auto df = make_product_df(
                63, f41, 8,
                {{{20, 0}, {20, 1}, {-20, 7}, {-20, 35}, {29, 5}, {29, 37}, {-29, 18}, {-29, 24}}},
                c08);
            auto part2 = make_product_df(
                63, f41, 8,
                {{{0, 0}, {1, 1}, {3, 7}, {7, 4}, {19, 2}, {34, 3}, {42, 6}, {53, 27}},
                 {{0, 0}, {1, 3}, {4, 2}, {6, 1}, {26, 8}, {36, 29}, {43, 36}, {51, 15}}},
                c02);
            df.base_blocks.insert(df.base_blocks.end(), part2.base_blocks.begin(),
                                  part2.base_blocks.end());
            add_df("df/63x41-8", std::move(df), "explicit construction over Z63 x F41");
        }
        {
            FiniteField f41(41, 1);
            auto df = make_product_df(2, f41, 5,
                                      {{{0, 0}, {0, 1}, {1, 2}, {1, 8}, {1, 13}},
                                       {{0, 0}, {1, 3}, {1, 5}, {1, 17}, {1, 25}}},
                                      {1, 9});
            add_df("df/2x41-5", std::move(df), "worked example over Z2 x F41");
        }
    }

    void add_witness(const std::string& id, WitnessCollection w, std::int64_t d,
                     const std::string& sdf_id, const std::string& source)
    {
        CatalogEntry e;
        e.id = id;
        e.kind = "witness";
        e.source = source;
        e.witness = std::move(w);
        e.witness_type_d = d;
        e.witness_sdf_id = sdf_id;
        entries_[id] = std::move(e);
    }

    void load_witnesses()
    {
        // pow < 0 encodes -omega^{|pow|}; pow == INT64_MIN would be unused
        struct Pt { std::int64_t g; std::int64_t pow; bool zero; bool negate; };
        auto build = [&](const FiniteField& f,
                         const std::vector<std::vector<Pt>>& spec_blocks) {
            WitnessCollection w;
            w.g_part = AbelianGroup({30});
            w.field = f;
            w.type_d = 2;
            w.k = 6;
            w.mu = 6;
            for (const auto& blk : spec_blocks) {
                std::vector<std::pair<std::int64_t, std::int64_t>> b;
                for (const auto& p : blk) {
                    std::int64_t val = p.zero ? 0 : f.pow_omega(p.pow);
                    if (p.negate) val = f.neg(val);
                    b.emplace_back(p.g, val);
                }
                w.blocks.push_back(std::move(b));
            }
            return w;
        };
        auto with_twin = [&](WitnessCollection w, const std::vector<std::size_t>& twin_of) {
            for (std::size_t i = 0; i < twin_of.size(); ++i) {
                auto b = w.blocks[twin_of[i]];
                for (auto& [g, v] : b) v = w.field.neg(v);
                w.blocks.push_back(std::move(b));
            }
            return w;
        };
        {
            FiniteField f(5, 2, std::vector<std::int64_t>{2, -1, 1});
            auto w = build(f, {{{0, 0, false, false}, {0, 0, false, true},
                                {6, 13, false, false}, {6, 13, false, true},
                                {16, 11, false, false}, {16, 11, false, true}},
                               {{0, 0, false, false}, {15, 0, false, true},
                                {3, 16, false, false}, {18, 16, false, true},
                                {7, 5, false, false}, {22, 5, false, true}},
                               {{0, 0, true, false}, {1, 0, false, false},
                                {2, 20, false, false}, {3, 22, false, false},
                                {8, 18, false, false}, {21, 12, false, false}},
                               {{0, 0, true, false}, {2, 0, false, false},
                                {5, 6, false, false}, {9, 19, false, false},
                                {13, 14, false, false}, {18, 4, false, false}}});
            w = with_twin(std::move(w), {2, 3});
            std::swap(w.blocks[4], w.blocks[5]); // order: C1 C2 C3 C4 C5 C6
            std::swap(w.blocks[3], w.blocks[4]);
            add_witness("witness/30x25-6", std::move(w), 2, "sdf/z30-6-6",
                        "explicit witness over Z30 x GF(25)");
        }
        {
            FiniteField f(7, 2, std::vector<std::int64_t>{3, -1, 1});
            auto w = build(f, {{{0, 0, false, false}, {0, 0, false, true},
                                {6, 40, false, false}, {6, 40, false, true},
                                {16, 26, false, false}, {16, 26, false, true}},
                               {{0, 0, false, false}, {15, 0, false, true},
                                {3, 13, false, false}, {18, 13, false, true},
                                {7, 5, false, false}, {22, 5, false, true}},
                               {{0, 0, true, false}, {1, 0, false, false},
                                {2, 8, false, false}, {3, 24, false, false},
                                {8, 21, false, false}, {21, 10, false, false}},
                               {{0, 0, true, false}, {2, 0, false, false},
                                {5, 34, false, false}, {9, 32, false, false},
                                {13, 2, false, false}, {18, 8, false, false}}});
            w = with_twin(std::move(w), {2, 3});
            std::swap(w.blocks[4], w.blocks[5]);
            std::swap(w.blocks[3], w.blocks[4]);
            add_witness("witness/30x49-6", std::move(w), 2, "sdf/z30-6-6",
                        "explicit witness over Z30 x GF(49)");
        }
        {
            FiniteField f(41, 1);
            WitnessCollection w;
            w.g_part = AbelianGroup({2});
            w.field = f;
            w.type_d = 2;
            w.k = 5;
            w.mu = 20;
            w.blocks = {{{0, 0}, {0, 1}, {1, 2}, {1, 8}, {1, 13}},
                        {{0, 0}, {1, 3}, {1, 5}, {1, 17}, {1, 25}}};
            add_witness("witness/2x41-5", std::move(w), 2, "sdf/z2-5-20",
                        "worked example witness over Z2 x F41");
        }
    }

    void load_bibd()
    {
        CatalogEntry e;
        e.id = "bibd/31-6-1";
        e.kind = "bibd";
        e.source = "projective plane of order 5, cyclic presentation";
        e.bibd_base = {0, 1, 3, 8, 12, 18};
        e.bibd_v = 31;
        entries_[e.id] = e;

        CatalogEntry a3;
        a3.id = "perm/31-order3";
        a3.kind = "automorphism";
        a3.source = "order-3 symmetry of bibd/31-6-1";
        a3.permutation = detail::perm_from_cycles(
            31, {{1, 13, 6}, {2, 23, 29}, {3, 25, 20}, {4, 5, 30}, {7, 26, 28},
                 {8, 16, 19}, {9, 17, 10}, {11, 24, 15}, {12, 21, 27}, {14, 22, 18}});
        entries_[a3.id] = a3;

        CatalogEntry a5;
        a5.id = "perm/31-order5";
        a5.kind = "automorphism";
        a5.source = "order-5 symmetry of bibd/31-6-1";
        a5.permutation = detail::perm_from_cycles(
            31, {{0, 18, 29, 7, 22}, {1, 25, 26, 16, 19}, {2, 11, 28, 9, 24},
                 {3, 4, 27, 12, 20}, {5, 6, 8, 17, 13}, {10, 15, 14, 21, 30}});
        entries_[a5.id] = a5;
    }

    void load_ooc_fillers()
    {
        auto add = [&](const std::string& id, std::int64_t v, int k,
                       std::vector<std::int64_t> cw) {
            CatalogEntry e;
            e.id = id;
            e.kind = "ooc_filler";
            e.source = "small optimal code";
            e.filler_v = v;
            e.filler_k = k;
            e.filler = std::move(cw);
            entries_[id] = std::move(e);
        };
        add("ooc/filler-2-5", 2, 5, {});
        add("ooc/filler-10-5", 10, 5, {});
        add("ooc/filler-12-5", 12, 5, {});
        add("ooc/filler-5-6", 5, 6, {});
        add("ooc/filler-15-6", 15, 6, {});
        add("ooc/filler-25-6", 25, 6, {});
        add("ooc/filler-30-6", 30, 6, {});
        add("ooc/filler-21-7", 21, 7, {});
        add("ooc/filler-35-7", 35, 7, {});
        add("ooc/filler-35-6", 35, 6, {0, 1, 3, 7, 12, 20});
        add("ooc/filler-45-6", 45, 6, {0, 1, 3, 7, 12, 20});
        add("ooc/filler-49-7", 49, 7, {0, 1, 3, 7, 27, 35, 40});
        add("ooc/filler-63-8", 63, 8, {0, 1, 3, 7, 15, 20, 31, 41});
    }

    void load_polys()
    {
        auto add = [&](const std::string& id, std::int64_t p, std::vector<std::int64_t> c) {
            CatalogEntry e;
            e.id = id;
            e.kind = "primitive_poly";
            e.source = "degree-2 primitive modulus";
            e.poly_p = p;
            e.poly = std::move(c);
            entries_[id] = std::move(e);
        };
        add("poly/gf25", 5, {2, -1, 1});
        add("poly/gf49", 7, {3, -1, 1});
    }

    void validate() const
    {
        auto why = [](const VerifyResult& r) {
            return r.certificate ? r.certificate->note : std::string{};
        };
        for (const auto& [id, e] : entries_) {
            if (e.sdf) {
                auto r = verify_sdf(*e.sdf);
                if (!r.ok)
                    throw std::logic_error("catalog sdf failed verification: " + id + " (" +
                                           why(r) + ")");
                if (e.sdf->pattern) {
                    bool ok = e.type_label == 4 ? pattern_check_type4(*e.sdf)
                                                : pattern_check_type2(*e.sdf);
                    if (!ok) throw std::logic_error("catalog pattern check failed: " + id);
                }
            }
            if (e.df) {
                auto r = verify_relative_df(*e.df);
                if (!r.ok)
                    throw std::logic_error("catalog df failed verification: " + id + " (" +
                                           why(r) + ")");
            }
        }
    }

    std::map<std::string, CatalogEntry> entries_;
};

inline const CatalogEntry& catalog_get(const std::string& id) { return Catalog::instance().get(id); }
inline std::vector<std::string> catalog_list(const std::string& kind = "")
{
    return Catalog::instance().list(kind);
}

} // namespace difforge
