#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "difforge/designs.hpp"
#include "difforge/differences.hpp"

namespace difforge {

struct OpticalOrthogonalCode {
    std::int64_t v = 0;
    int k = 0;
    std::vector<Block> codewords;
};

struct OocVerify {
    bool ok = false;
    std::vector<std::int64_t> missing; // uncovered differences; 0 is always here
    std::string note;
};

// A valid code's concatenated difference lists repeat no value (and contain no
// zero). missing = the elements of Z_v covered zero times.
inline OocVerify verify_ooc(const OpticalOrthogonalCode& c)
{
    OocVerify out;
    if (c.v < 2) {
        out.note = "modulus too small";
        return out;
    }
    std::vector<std::int64_t> count(static_cast<std::size_t>(c.v), 0);
    for (const auto& w : c.codewords) {
        if (static_cast<int>(w.size()) != c.k) {
            out.note = "codeword weight mismatch";
            return out;
        }
        for (auto x : w)
            if (x < 0 || x >= c.v) {
                out.note = "codeword element outside Z_v";
                return out;
            }
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t j = 0; j < w.size(); ++j)
                if (i != j) {
                    auto d = ((w[i] - w[j]) % c.v + c.v) % c.v;
                    ++count[static_cast<std::size_t>(d)];
                }
    }
    if (count[0] != 0) {
        out.note = "zero difference (repeated codeword element)";
        return out;
    }
    for (std::int64_t x = 1; x < c.v; ++x)
        if (count[static_cast<std::size_t>(x)] > 1) {
            out.note = "difference " + std::to_string(x) + " repeats";
            return out;
        }
    for (std::int64_t x = 0; x < c.v; ++x)
        if (count[static_cast<std::size_t>(x)] == 0) out.missing.push_back(x);
    out.ok = true;
    return out;
}

// Optimal when the missing-difference set (0 included) has size <= k(k-1),
// i.e. no further codeword could exist and none is "wasted".
inline bool is_optimal_ooc(const OpticalOrthogonalCode& c)
{
    auto r = verify_ooc(c);
    return r.ok && static_cast<std::int64_t>(r.missing.size()) <=
                       static_cast<std::int64_t>(c.k) * (c.k - 1);
}

// A cyclic (gv, g, k, 1)-relative difference family read as a (gv, k, 1)-OOC;
// the missing differences are exactly the forbidden subgroup {0, v, ..., (g-1)v}.
inline OpticalOrthogonalCode ooc_from_relative_df(const RelativeDifferenceFamily& df_in)
{
    auto df = df_to_cyclic(df_in);
    auto r = verify_relative_df(df);
    if (!r.ok) throw std::invalid_argument("unverified difference family");
    OpticalOrthogonalCode c;
    c.v = df.group.order();
    c.k = df.k;
    for (auto b : df.base_blocks) {
        std::sort(b.begin(), b.end());
        c.codewords.push_back(std::move(b));
    }
    auto chk = verify_ooc(c);
    if (!chk.ok || chk.missing != df.forbidden)
        throw std::logic_error("difference family did not read as an OOC");
    return c;
}

// Paste a (g, k, 1)-OOC onto the missing subgroup of a cyclic (gv, g, k, 1)
// family: codewords = base blocks plus v * (filler codewords). The result is
// optimal whenever the filler is.
inline OpticalOrthogonalCode compose_ooc(const RelativeDifferenceFamily& df_in,
                                         const OpticalOrthogonalCode& filler)
{
    auto df = df_to_cyclic(df_in);
    auto c = ooc_from_relative_df(df);
    const std::int64_t g = static_cast<std::int64_t>(df.forbidden.size());
    const std::int64_t v = c.v / g;
    if (filler.v != g || filler.k != c.k)
        throw std::invalid_argument("filler must be a (g, k, 1)-OOC on the missing subgroup");
    if (!filler.codewords.empty() && !is_optimal_ooc(filler))
        throw std::invalid_argument("filler fails verification or optimality");
    for (const auto& w : filler.codewords) {
        Block scaled;
        for (auto x : w) scaled.push_back(v * x);
        std::sort(scaled.begin(), scaled.end());
        c.codewords.push_back(std::move(scaled));
    }
    auto chk = verify_ooc(c);
    if (!chk.ok) throw std::logic_error("composition produced a clash: " + chk.note);
    return c;
}

enum class SearchStatus { kFound, kNone, kUnknown };

struct OocSearchResult {
    SearchStatus status = SearchStatus::kUnknown;
    std::optional<OpticalOrthogonalCode> code;
    std::int64_t nodes = 0;
    bool fully_explored = false;
};

inline std::int64_t search_node_budget(std::int64_t fallback)
{
    if (const char* s = std::getenv("DIFFORGE_NODE_BUDGET")) {
        char* end = nullptr;
        auto v = std::strtoll(s, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return fallback;
}

// Exhaustive search for a single difference-distinct k-subset of Z_v. The
// codeword is normalized to start at 0 with the minimal cyclic gap first
// (every orbit under rotation has such a representative), so NONE with full
// exploration certifies nonexistence.
inline OocSearchResult search_ooc_exhaustive(std::int64_t v, int k,
                                             std::int64_t budget = 2'000'000'000)
{
    budget = search_node_budget(budget);
    OocSearchResult res;
    if (k < 2 || v < k) {
        res.status = SearchStatus::kNone;
        res.fully_explored = true;
        return res;
    }
    std::vector<char> used(static_cast<std::size_t>(v), 0); // difference taken
    std::vector<std::int64_t> word{0};
    bool out_of_budget = false;
    bool found = false;

    auto mark = [&](std::int64_t x, int on) {
        for (auto y : word) {
            used[static_cast<std::size_t>(((x - y) % v + v) % v)] = static_cast<char>(on);
            used[static_cast<std::size_t>(((y - x) % v + v) % v)] = static_cast<char>(on);
        }
    };
    auto feasible = [&](std::int64_t x) {
        for (std::size_t i = 0; i < word.size(); ++i) {
            auto d = ((x - word[i]) % v + v) % v;
            if (used[static_cast<std::size_t>(d)] || used[static_cast<std::size_t>(v - d)])
                return false;
            if (2 * d == v) return false; // d and v-d coincide: instant repeat
            // two new differences from x itself may also clash (d vs v-d)
            for (std::size_t j = 0; j < i; ++j) {
                auto e = ((x - word[j]) % v + v) % v;
                if (e == d || e == v - d) return false;
            }
        }
        return true;
    };
    std::function<bool(std::int64_t)> dfs = [&](std::int64_t lo) -> bool {
        if (++res.nodes > budget) {
            out_of_budget = true;
            return false;
        }
        if (static_cast<int>(word.size()) == k) {
            // the wraparound gap must not undercut the first gap
            return v - word.back() >= word[1];
        }
        const std::int64_t first_gap =
            word.size() >= 2 ? word[1] : v; // gaps after the first may not be smaller
        for (std::int64_t x = lo; x < v; ++x) {
            if (word.size() >= 2 && x - word.back() < first_gap) continue;
            if (!feasible(x)) continue;
            mark(x, 1);
            word.push_back(x);
            if (dfs(x + 1)) return true;
            word.pop_back();
            mark(x, 0);
            if (out_of_budget) return false;
        }
        return false;
    };
    found = dfs(1);
    if (found) {
        res.status = SearchStatus::kFound;
        res.code = OpticalOrthogonalCode{v, k, {word}};
        auto chk = verify_ooc(*res.code);
        if (!chk.ok) throw std::logic_error("search returned an invalid codeword");
    } else if (out_of_budget) {
        res.status = SearchStatus::kUnknown;
    } else {
        res.status = SearchStatus::kNone;
        res.fully_explored = true;
    }
    return res;
}

struct DfSearchResult {
    SearchStatus status = SearchStatus::kUnknown;
    std::optional<RelativeDifferenceFamily> df;
    std::int64_t nodes = 0;
    bool fully_explored = false;
};

// Exhaustive search for a (G, N, k, 1)-relative difference family. Each base
// block is individually translation-invariant (delta(B+g) = delta(B)), so every
// block is normalized to contain 0 with ascending elements, and blocks are
// ordered lexicographically; the search space then covers all families up to
// per-block translation, making NONE a certificate.
inline DfSearchResult search_relative_df_exhaustive(const AbelianGroup& g,
                                                    const std::vector<std::int64_t>& n, int k,
                                                    std::int64_t budget = 2'000'000'000,
                                                    std::optional<std::uint64_t> seed = std::nullopt)
{
    budget = search_node_budget(budget);
    DfSearchResult res;
    if (!g.is_subgroup(n)) throw std::invalid_argument("forbidden set is not a subgroup");
    const std::int64_t outside = g.order() - static_cast<std::int64_t>(n.size());
    if (outside % (static_cast<std::int64_t>(k) * (k - 1)) != 0) {
        res.status = SearchStatus::kNone;
        res.fully_explored = true;
        return res;
    }
    const std::int64_t nblocks = outside / (static_cast<std::int64_t>(k) * (k - 1));

    // seeded mode permutes the value order (still a complete enumeration, but
    // the inter-block lexicographic prune no longer applies)
    std::vector<std::int64_t> order(static_cast<std::size_t>(g.order()));
    std::iota(order.begin(), order.end(), 0);
    if (seed) {
        std::mt19937_64 rng(*seed);
        std::shuffle(order.begin() + 1, order.end(), rng);
    }
    std::vector<std::int64_t> rank(order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        rank[static_cast<std::size_t>(order[i])] = static_cast<std::int64_t>(i);

    std::vector<char> banned(static_cast<std::size_t>(g.order()), 0);
    for (auto e : n) banned[static_cast<std::size_t>(e)] = 1;
    std::vector<char> used = banned; // differences consumed so far (N is never allowed)
    std::vector<Block> blocks;
    Block cur{0};
    bool out_of_budget = false;

    auto mark = [&](std::int64_t x, int on) {
        for (auto y : cur) {
            used[static_cast<std::size_t>(g.sub(x, y))] = static_cast<char>(on);
            used[static_cast<std::size_t>(g.sub(y, x))] = static_cast<char>(on);
        }
    };
    auto feasible = [&](std::int64_t x) {
        for (std::size_t i = 0; i < cur.size(); ++i) {
            auto d = g.sub(x, cur[i]);
            if (used[static_cast<std::size_t>(d)] || used[static_cast<std::size_t>(g.neg(d))])
                return false;
            for (std::size_t j = 0; j < i; ++j) {
                auto e = g.sub(x, cur[j]);
                if (e == d || e == g.neg(d)) return false;
            }
        }
        return true;
    };

    std::function<bool()> next_block;
    std::function<bool(std::int64_t)> grow = [&](std::int64_t lo) -> bool {
        if (++res.nodes > budget) {
            out_of_budget = true;
            return false;
        }
        if (static_cast<int>(cur.size()) == k) {
            blocks.push_back(cur);
            Block saved = cur;
            if (next_block()) return true;
            cur = saved;
            blocks.pop_back();
            return false;
        }
        for (std::int64_t r = lo; r < g.order(); ++r) {
            const std::int64_t x = order[static_cast<std::size_t>(r)];
            if (!feasible(x)) continue;
            mark(x, 1);
            cur.push_back(x);
            if (grow(r + 1)) return true;
            cur.pop_back();
            mark(x, 0);
            if (out_of_budget) return false;
        }
        return false;
    };
    next_block = [&]() -> bool {
        if (static_cast<std::int64_t>(blocks.size()) == nblocks) return true;
        // blocks are lex-ordered: the next block's second element may not
        // precede the previous one's
        const std::int64_t lo =
            (blocks.empty() || seed) ? 1 : rank[static_cast<std::size_t>(blocks.back()[1])];
        cur = {0};
        return grow(lo);
    };
    bool found = next_block();

    if (found) {
        RelativeDifferenceFamily df;
        df.group = g;
        df.forbidden = n;
        df.base_blocks = blocks;
        df.k = k;
        df.lambda = 1;
        if (!verify_relative_df(df).ok)
            throw std::logic_error("search returned an invalid family");
        res.status = SearchStatus::kFound;
        res.df = std::move(df);
    } else if (out_of_budget) {
        res.status = SearchStatus::kUnknown;
    } else {
        res.status = SearchStatus::kNone;
        res.fully_explored = true;
    }
    return res;
}

} // namespace difforge
