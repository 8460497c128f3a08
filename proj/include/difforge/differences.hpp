#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "group.hpp"

namespace difforge {

// A block is a multiset of group elements, kept as an ordered list.
using Block = std::vector<std::int64_t>;

// Exact multiset of differences, dense counts indexed by element encoding.
struct DifferenceList {
    std::vector<std::int64_t> counts;

    std::int64_t total() const
    {
        std::int64_t t = 0;
        for (auto c : counts) t += c;
        return t;
    }
};

inline void accumulate_delta_block(const AbelianGroup& g, const Block& b, DifferenceList& out)
{
    if (b.size() < 2) throw std::invalid_argument("difference list needs a block of size >= 2");
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (i != j) ++out.counts[static_cast<std::size_t>(g.sub(b[i], b[j]))];
}

// All k(k-1) ordered differences of a block (positions distinct, not values).
inline DifferenceList delta_block(const AbelianGroup& g, const Block& b)
{
    DifferenceList d;
    d.counts.assign(static_cast<std::size_t>(g.order()), 0);
    accumulate_delta_block(g, b, d);
    return d;
}

inline DifferenceList delta_family(const AbelianGroup& g, const std::vector<Block>& blocks)
{
    DifferenceList d;
    d.counts.assign(static_cast<std::size_t>(g.order()), 0);
    for (const auto& b : blocks) accumulate_delta_block(g, b, d);
    return d;
}

struct VerifyCertificate {
    std::int64_t element = 0;
    std::int64_t observed = 0;
    std::int64_t expected = 0;
    std::string note;
};

struct VerifyResult {
    bool ok = false;
    std::optional<VerifyCertificate> certificate;

    explicit operator bool() const { return ok; }
};

inline VerifyResult verify_ok() { return {true, std::nullopt}; }

inline VerifyResult verify_fail(std::int64_t elem, std::int64_t obs, std::int64_t exp,
                                std::string note = {})
{
    return {false, VerifyCertificate{elem, obs, exp, std::move(note)}};
}

// Partition of SDF base blocks for the type-2 / type-4 template patterns.
struct SdfPattern {
    std::vector<int> sigma1;
    std::vector<int> sigma2;
    std::vector<int> sigma3; // type 2: consecutive entries pair up identical blocks
};

struct StrongDifferenceFamily {
    AbelianGroup group;
    std::vector<Block> base_blocks;
    int k = 0;
    std::int64_t mu = 0;
    std::optional<SdfPattern> pattern;
};

inline VerifyResult verify_sdf(const StrongDifferenceFamily& s)
{
    for (const auto& b : s.base_blocks) {
        if (static_cast<int>(b.size()) != s.k)
            return verify_fail(0, static_cast<std::int64_t>(b.size()), s.k, "block size mismatch");
        for (auto e : b)
            if (e < 0 || e >= s.group.order())
                return verify_fail(e, 0, 0, "element outside group");
    }
    if (s.base_blocks.empty()) return verify_fail(0, 0, s.mu, "no base blocks");
    auto d = delta_family(s.group, s.base_blocks);
    for (std::int64_t x = 0; x < s.group.order(); ++x) {
        if (d.counts[static_cast<std::size_t>(x)] != s.mu)
            return verify_fail(x, d.counts[static_cast<std::size_t>(x)], s.mu);
    }
    return verify_ok();
}

struct RelativeDifferenceFamily {
    AbelianGroup group;
    std::vector<std::int64_t> forbidden; // the subgroup N, listed in full
    std::vector<Block> base_blocks;      // simple k-subsets
    int k = 0;
    std::int64_t lambda = 1;
};

inline VerifyResult verify_relative_df(const RelativeDifferenceFamily& d)
{
    if (!d.group.is_subgroup(d.forbidden))
        return verify_fail(0, 0, 0, "forbidden set is not a subgroup");
    for (const auto& b : d.base_blocks) {
        if (static_cast<int>(b.size()) != d.k)
            return verify_fail(0, static_cast<std::int64_t>(b.size()), d.k, "block size mismatch");
        Block sorted = b;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            return verify_fail(0, 0, 0, "DF block has a repeated element");
    }
    auto delta = delta_family(d.group, d.base_blocks);
    std::vector<char> in_n(static_cast<std::size_t>(d.group.order()), 0);
    for (auto e : d.forbidden) in_n[static_cast<std::size_t>(e)] = 1;
    for (std::int64_t x = 0; x < d.group.order(); ++x) {
        std::int64_t expect = in_n[static_cast<std::size_t>(x)] ? 0 : d.lambda;
        if (delta.counts[static_cast<std::size_t>(x)] != expect)
            return verify_fail(x, delta.counts[static_cast<std::size_t>(x)], expect);
    }
    return verify_ok();
}

// --- pattern machinery -----------------------------------------------------

// Parse of one Sigma_1 block: representatives x_i paired as (x, delta + x),
// with a literal 0 prepended when k is odd.
struct Sigma1Shape {
    std::int64_t delta = 0;
    std::vector<std::int64_t> xs;
};

namespace detail {

inline bool delta_list_avoids(const AbelianGroup& g, const std::vector<std::int64_t>& xs,
                              bool forbid_involutions)
{
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (i == j) continue;
            std::int64_t d = g.sub(xs[i], xs[j]);
            if (d == 0) return false;
            if (forbid_involutions && g.is_involution(d)) return false;
        }
    return true;
}

inline bool pair_up_sigma1(const AbelianGroup& g, std::map<std::int64_t, int>& remaining,
                           std::int64_t delta, std::vector<std::int64_t>& xs,
                           std::size_t need)
{
    if (xs.size() == need)
        return delta_list_avoids(g, xs, /*forbid_involutions=*/true);
    auto it = std::find_if(remaining.begin(), remaining.end(),
                           [](const auto& kv) { return kv.second > 0; });
    if (it == remaining.end()) return false;
    std::int64_t a = it->first;
    // either a = x_i (partner delta + a) or a = delta + x_i (then x_i = a - delta)
    std::vector<std::int64_t> branches{a};
    if (g.sub(a, delta) != a) branches.push_back(g.sub(a, delta));
    for (std::int64_t x : branches) {
        std::int64_t partner = g.add(delta, x);
        if (x == partner) {
            if (remaining[x] < 2) continue;
            remaining[x] -= 2;
        } else {
            if (remaining[x] < 1 || remaining[partner] < 1) continue;
            --remaining[x];
            --remaining[partner];
        }
        xs.push_back(x);
        if (pair_up_sigma1(g, remaining, delta, xs, need)) return true;
        xs.pop_back();
        if (x == partner) remaining[x] += 2;
        else { ++remaining[x]; ++remaining[partner]; }
    }
    return false;
}

} // namespace detail

// Tries every admissible delta (zero or an involution) and pairing; returns
// the first shape whose representative differences avoid zeros/involutions.
inline std::optional<Sigma1Shape> parse_sigma1_block(const AbelianGroup& g, const Block& b)
{
    int k = static_cast<int>(b.size());
    std::vector<std::int64_t> candidates{0};
    for (std::int64_t x = 1; x < g.order(); ++x)
        if (g.is_involution(x)) candidates.push_back(x);
    for (auto delta : candidates) {
        std::map<std::int64_t, int> counts;
        for (auto e : b) ++counts[e];
        if (k % 2 == 1) {
            auto it = counts.find(0);
            if (it == counts.end() || it->second == 0) continue;
            --it->second;
        }
        std::vector<std::int64_t> xs;
        if (detail::pair_up_sigma1(g, counts, delta, xs, static_cast<std::size_t>(k / 2)))
            return Sigma1Shape{delta, xs};
    }
    return std::nullopt;
}

inline bool is_sigma2_type2_block(const AbelianGroup& g, const Block& b)
{
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (i == j) continue;
            std::int64_t d = g.sub(b[i], b[j]);
            if (d != 0 && !g.is_involution(d)) return false;
        }
    return true;
}

namespace detail {

inline std::map<Block, int> block_multiplicities(std::vector<Block> blocks)
{
    std::map<Block, int> m;
    for (auto& b : blocks) {
        std::sort(b.begin(), b.end());
        ++m[b];
    }
    return m;
}

} // namespace detail

inline bool pattern_check_type2(const StrongDifferenceFamily& s)
{
    if (!s.pattern) throw std::invalid_argument("SDF carries no pattern annotation");
    const auto& pat = *s.pattern;
    std::size_t covered = pat.sigma1.size() + pat.sigma2.size() + pat.sigma3.size();
    if (covered != s.base_blocks.size()) return false;
    for (int i : pat.sigma1)
        if (!parse_sigma1_block(s.group, s.base_blocks[static_cast<std::size_t>(i)])) return false;
    for (int i : pat.sigma2)
        if (!is_sigma2_type2_block(s.group, s.base_blocks[static_cast<std::size_t>(i)])) return false;
    std::vector<Block> sigma3;
    for (int i : pat.sigma3) sigma3.push_back(s.base_blocks[static_cast<std::size_t>(i)]);
    for (const auto& [blk, mult] : detail::block_multiplicities(sigma3)) {
        if (mult % 2 != 0) return false;
        if (!detail::delta_list_avoids(s.group, blk, /*forbid_involutions=*/true)) return false;
    }
    return true;
}

// Parse of the distinguished type-4 block: [x,x,-x,-x,...], 0 prepended for
// k = 1 (mod 4). Representatives are unique up to sign, which Delta ignores.
inline std::optional<std::vector<std::int64_t>> parse_sigma1_type4_block(const AbelianGroup& g,
                                                                         const Block& b)
{
    int k = static_cast<int>(b.size());
    std::map<std::int64_t, int> counts;
    for (auto e : b) ++counts[e];
    if (k % 4 == 1) {
        auto it = counts.find(0);
        if (it == counts.end() || it->second == 0) return std::nullopt;
        --it->second;
    } else if (k % 4 != 0) {
        return std::nullopt;
    }
    std::vector<std::int64_t> xs;
    for (auto& [x, c] : counts) {
        if (c == 0) continue;
        if (x == 0) return std::nullopt; // quadruple [0,0,0,0] puts zeros in the delta list
        std::int64_t nx = g.neg(x);
        if (nx < x) continue; // handled from the partner
        auto jt = counts.find(nx);
        if (jt == counts.end()) return std::nullopt;
        if (c % 2 != 0 || jt->second != c) return std::nullopt;
        for (int rep = 0; rep < c / 2; ++rep) xs.push_back(x);
        c = 0;
        jt->second = 0;
    }
    if (static_cast<int>(xs.size()) != k / 4) return std::nullopt;
    // Delta[x1,-x1,...,x_r,-x_r] free of zeros: x_i != +-x_j for i != j
    std::vector<std::int64_t> signed_xs;
    for (auto x : xs) { signed_xs.push_back(x); signed_xs.push_back(g.neg(x)); }
    if (!detail::delta_list_avoids(g, signed_xs, /*forbid_involutions=*/false)) return std::nullopt;
    return xs;
}

inline bool pattern_check_type4(const StrongDifferenceFamily& s)
{
    if (!s.pattern) throw std::invalid_argument("SDF carries no pattern annotation");
    const auto& pat = *s.pattern;
    if (s.group.order() % 2 == 0) return false;
    if (s.k % 4 != 0 && s.k % 4 != 1) return false;
    if (s.mu != 4 * (s.k / 4)) return false;
    if (pat.sigma1.size() != 1 || !pat.sigma3.empty()) return false;
    if (pat.sigma1.size() + pat.sigma2.size() != s.base_blocks.size()) return false;
    if (!parse_sigma1_type4_block(s.group, s.base_blocks[static_cast<std::size_t>(pat.sigma1[0])]))
        return false;
    std::vector<Block> sigma2;
    for (int i : pat.sigma2) sigma2.push_back(s.base_blocks[static_cast<std::size_t>(i)]);
    for (const auto& [blk, mult] : detail::block_multiplicities(sigma2)) {
        if (mult % 4 != 0) return false;
        if (!detail::delta_list_avoids(s.group, blk, /*forbid_involutions=*/false)) return false;
    }
    return true;
}

// Greedy derivation of a type-2 annotation: blocks parseable as a Sigma1
// shape go first, involution-only blocks to Sigma2, the rest to Sigma3.
inline std::optional<SdfPattern> derive_type2_pattern(const StrongDifferenceFamily& s)
{
    SdfPattern p;
    for (int i = 0; i < static_cast<int>(s.base_blocks.size()); ++i) {
        const auto& b = s.base_blocks[static_cast<std::size_t>(i)];
        if (parse_sigma1_block(s.group, b)) p.sigma1.push_back(i);
        else if (is_sigma2_type2_block(s.group, b)) p.sigma2.push_back(i);
        else p.sigma3.push_back(i);
    }
    StrongDifferenceFamily probe = s;
    probe.pattern = p;
    if (pattern_check_type2(probe)) return p;
    return std::nullopt;
}

// Type-4 annotation: try each block parseable as the distinguished shape.
inline std::optional<SdfPattern> derive_type4_pattern(const StrongDifferenceFamily& s)
{
    for (int i = 0; i < static_cast<int>(s.base_blocks.size()); ++i) {
        if (!parse_sigma1_type4_block(s.group, s.base_blocks[static_cast<std::size_t>(i)]))
            continue;
        SdfPattern p;
        p.sigma1.push_back(i);
        for (int j = 0; j < static_cast<int>(s.base_blocks.size()); ++j)
            if (j != i) p.sigma2.push_back(j);
        StrongDifferenceFamily probe = s;
        probe.pattern = p;
        if (pattern_check_type4(probe)) return p;
    }
    return std::nullopt;
}

} // namespace difforge
