#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "difforge/differences.hpp"
#include "difforge/field.hpp"
#include "difforge/group.hpp"

namespace difforge {

// Reindex a relative difference family between Z_{hq} and Z_h x Z_q (coprime
// factors) through the Chinese remainder isomorphism; differences transfer.
inline RelativeDifferenceFamily df_to_product(const RelativeDifferenceFamily& df,
                                              std::int64_t h, std::int64_t q)
{
    if (df.group.orders() != std::vector<std::int64_t>{h * q})
        throw std::invalid_argument("expected a cyclic family of order h*q");
    CrtIso crt(h, q);
    RelativeDifferenceFamily out;
    out.group = AbelianGroup({h, q});
    out.k = df.k;
    out.lambda = df.lambda;
    auto remap = [&](std::int64_t e) {
        auto [a, b] = crt.backward(e);
        return a * q + b;
    };
    for (auto e : df.forbidden) out.forbidden.push_back(remap(e));
    std::sort(out.forbidden.begin(), out.forbidden.end());
    for (const auto& blk : df.base_blocks) {
        Block nb;
        for (auto e : blk) nb.push_back(remap(e));
        std::sort(nb.begin(), nb.end());
        out.base_blocks.push_back(std::move(nb));
    }
    return out;
}

inline RelativeDifferenceFamily df_to_cyclic(const RelativeDifferenceFamily& df)
{
    auto os = df.group.orders();
    if (os.size() == 1) return df;
    if (os.size() != 2 || std::gcd(os[0], os[1]) != 1)
        throw std::invalid_argument("no Chinese remainder route to a cyclic reindexing");
    CrtIso crt(os[0], os[1]);
    RelativeDifferenceFamily out;
    out.group = AbelianGroup({os[0] * os[1]});
    out.k = df.k;
    out.lambda = df.lambda;
    auto remap = [&](std::int64_t e) { return crt.forward(e / os[1], e % os[1]); };
    for (auto e : df.forbidden) out.forbidden.push_back(remap(e));
    std::sort(out.forbidden.begin(), out.forbidden.end());
    for (const auto& blk : df.base_blocks) {
        Block nb;
        for (auto e : blk) nb.push_back(remap(e));
        std::sort(nb.begin(), nb.end());
        out.base_blocks.push_back(std::move(nb));
    }
    return out;
}

// A block design with an explicit group partition. BIBDs are the special case
// where every group is a singleton. Point labels are arbitrary integers; they
// need not be contiguous (deletions leave holes).
struct Design {
    std::string kind = "gdd"; // gdd | bibd
    std::vector<std::int64_t> points;
    std::vector<std::vector<std::int64_t>> groups;
    std::vector<Block> blocks;
};

using Permutation = std::vector<std::int64_t>; // image array on labels 0..v-1

inline std::string group_type(const Design& d)
{
    std::map<std::size_t, std::size_t> sizes;
    for (const auto& g : d.groups) ++sizes[g.size()];
    std::string out;
    for (auto [s, c] : sizes)
        out += std::to_string(s) + "^" + std::to_string(c) + " ";
    if (!out.empty()) out.pop_back();
    return out;
}

// Exact pair coverage: every 2-subset of the points lies in exactly one block
// or in exactly one group, never both. block_sizes lists the admissible K-set.
inline VerifyResult verify_gdd(const Design& d, const std::vector<int>& block_sizes)
{
    std::map<std::int64_t, std::int64_t> idx;
    for (auto p : d.points)
        if (!idx.emplace(p, static_cast<std::int64_t>(idx.size())).second)
            return verify_fail(p, 0, 0, "duplicate point label");
    const std::size_t n = d.points.size();

    std::vector<std::int64_t> grp(n, -1);
    for (std::size_t gi = 0; gi < d.groups.size(); ++gi)
        for (auto p : d.groups[gi]) {
            auto it = idx.find(p);
            if (it == idx.end()) return verify_fail(p, 0, 0, "group point not in point set");
            if (grp[static_cast<std::size_t>(it->second)] != -1)
                return verify_fail(p, 0, 0, "point in two groups");
            grp[static_cast<std::size_t>(it->second)] = static_cast<std::int64_t>(gi);
        }
    for (std::size_t i = 0; i < n; ++i)
        if (grp[i] == -1) return verify_fail(d.points[i], 0, 0, "point in no group");

    std::vector<std::uint8_t> cover(n * n, 0);
    auto pair_at = [&](std::int64_t a, std::int64_t b) -> std::uint8_t& {
        return cover[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)];
    };
    for (const auto& b : d.blocks) {
        if (std::find(block_sizes.begin(), block_sizes.end(), static_cast<int>(b.size())) ==
            block_sizes.end())
            return verify_fail(static_cast<std::int64_t>(b.size()), 0, 0,
                               "block size outside the declared size set");
        std::vector<std::int64_t> bi;
        for (auto p : b) {
            auto it = idx.find(p);
            if (it == idx.end()) return verify_fail(p, 0, 0, "block point not in point set");
            bi.push_back(it->second);
        }
        std::sort(bi.begin(), bi.end());
        if (std::adjacent_find(bi.begin(), bi.end()) != bi.end())
            return verify_fail(0, 0, 0, "block has a repeated point");
        for (std::size_t i = 0; i < bi.size(); ++i)
            for (std::size_t j = i + 1; j < bi.size(); ++j) {
                auto& c = pair_at(bi[i], bi[j]);
                if (c == 255) return verify_fail(d.points[static_cast<std::size_t>(bi[i])],
                                                 255, 1, "pair count overflow");
                ++c;
            }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::int64_t expected = (grp[i] == grp[j]) ? 0 : 1;
            const std::int64_t got = pair_at(static_cast<std::int64_t>(i),
                                             static_cast<std::int64_t>(j));
            if (got != expected)
                return verify_fail(d.points[i], got, expected,
                                   "pair (" + std::to_string(d.points[i]) + "," +
                                       std::to_string(d.points[j]) + "): count " +
                                       std::to_string(got) + ", expected " +
                                       std::to_string(expected));
        }
    return {true, std::nullopt};
}

inline VerifyResult verify_bibd(const Design& d, int k)
{
    for (const auto& g : d.groups)
        if (g.size() != 1) return verify_fail(0, static_cast<std::int64_t>(g.size()), 1,
                                              "BIBD groups must be singletons");
    return verify_gdd(d, {k});
}

// Development: all group translates of the base blocks; groups are the cosets
// of the forbidden subgroup. Every pair coverage property of the DF transfers.
inline Design develop(const RelativeDifferenceFamily& df)
{
    auto r = verify_relative_df(df);
    if (!r.ok)
        throw std::invalid_argument("develop requires a verified difference family" +
                                    (r.certificate ? ": " + r.certificate->note : ""));
    const auto& G = df.group;
    Design d;
    d.kind = (df.forbidden.size() == 1) ? "bibd" : "gdd";
    d.points.resize(static_cast<std::size_t>(G.order()));
    std::iota(d.points.begin(), d.points.end(), 0);
    // cosets of N
    std::vector<char> seen(static_cast<std::size_t>(G.order()), 0);
    for (std::int64_t g = 0; g < G.order(); ++g) {
        if (seen[static_cast<std::size_t>(g)]) continue;
        std::vector<std::int64_t> coset;
        for (auto n : df.forbidden) {
            auto x = G.add(g, n);
            coset.push_back(x);
            seen[static_cast<std::size_t>(x)] = 1;
        }
        std::sort(coset.begin(), coset.end());
        d.groups.push_back(std::move(coset));
    }
    for (const auto& b : df.base_blocks)
        for (std::int64_t g = 0; g < G.order(); ++g) {
            Block t;
            for (auto x : b) t.push_back(G.add(x, g));
            std::sort(t.begin(), t.end());
            d.blocks.push_back(std::move(t));
        }
    std::sort(d.blocks.begin(), d.blocks.end());
    return d;
}

// Transversal design TD(k, n) = k-GDD of type n^k via the n-1 MOLS of prime
// order n: block (a,b) meets row group i in column a*i+b. For k = n+1 the
// extra group indexes the slopes a.
inline Design td_from_mols(int k, std::int64_t n)
{
    if (n < 2 || !is_prime(n)) throw std::invalid_argument("td_from_mols needs a prime order");
    if (k < 2 || k > n + 1) throw std::invalid_argument("td_from_mols needs 2 <= k <= n+1");
    Design d;
    d.kind = "gdd";
    const bool slopes = (k == n + 1);
    const int rows = slopes ? static_cast<int>(n) : k;
    for (int i = 0; i < k; ++i) {
        std::vector<std::int64_t> g;
        for (std::int64_t j = 0; j < n; ++j) {
            g.push_back(i * n + j);
            d.points.push_back(i * n + j);
        }
        d.groups.push_back(std::move(g));
    }
    for (std::int64_t a = 0; a < n; ++a)
        for (std::int64_t b = 0; b < n; ++b) {
            Block blk;
            for (int i = 0; i < rows; ++i) blk.push_back(i * n + (a * i + b) % n);
            if (slopes) blk.push_back(n * n + a);
            d.blocks.push_back(std::move(blk));
        }
    return d;
}

inline Design delete_points(const Design& d, const std::vector<std::int64_t>& s)
{
    std::set<std::int64_t> del(s.begin(), s.end());
    Design out;
    out.kind = d.kind;
    for (auto p : d.points)
        if (!del.count(p)) out.points.push_back(p);
    for (const auto& g : d.groups) {
        std::vector<std::int64_t> kept;
        for (auto p : g)
            if (!del.count(p)) kept.push_back(p);
        if (!kept.empty()) out.groups.push_back(std::move(kept));
    }
    for (const auto& b : d.blocks) {
        Block kept;
        for (auto p : b)
            if (!del.count(p)) kept.push_back(p);
        if (kept.size() == 1)
            throw std::invalid_argument("deletion leaves a degenerate block");
        if (kept.size() >= 2) out.blocks.push_back(std::move(kept));
    }
    return out;
}

// Wilson's fundamental construction: give every master point weight w and
// replace each block by a copy of a k-GDD of type w^k on the inflated points.
// The supplier must hand back ingredients on points 0..k*w-1 with groups
// {i*w, ..., i*w+w-1}.
template <typename Supplier>
inline Design inflate_by_weight(const Design& master, std::int64_t w, Supplier supplier)
{
    if (w < 1) throw std::invalid_argument("weight must be positive");
    Design out;
    out.kind = "gdd";
    for (auto p : master.points)
        for (std::int64_t t = 0; t < w; ++t) out.points.push_back(p * w + t);
    for (const auto& g : master.groups) {
        std::vector<std::int64_t> big;
        for (auto p : g)
            for (std::int64_t t = 0; t < w; ++t) big.push_back(p * w + t);
        out.groups.push_back(std::move(big));
    }
    std::map<int, Design> cache;
    for (const auto& b : master.blocks) {
        const int k = static_cast<int>(b.size());
        auto it = cache.find(k);
        if (it == cache.end()) {
            Design ing = supplier(k);
            std::vector<int> sizes{k};
            auto r = verify_gdd(ing, sizes);
            if (!r.ok)
                throw std::invalid_argument("ingredient of size " + std::to_string(k) +
                                            " is not a verified GDD");
            if (ing.groups.size() != static_cast<std::size_t>(k))
                throw std::invalid_argument("ingredient group count mismatch");
            for (std::size_t gi = 0; gi < ing.groups.size(); ++gi)
                for (auto p : ing.groups[gi])
                    if (p / w != static_cast<std::int64_t>(gi) || p % w < 0)
                        throw std::invalid_argument("ingredient labels must be i*w+t");
            it = cache.emplace(k, std::move(ing)).first;
        }
        for (const auto& ib : it->second.blocks) {
            Block nb;
            for (auto p : ib) nb.push_back(b[static_cast<std::size_t>(p / w)] * w + p % w);
            std::sort(nb.begin(), nb.end());
            out.blocks.push_back(std::move(nb));
        }
    }
    return out;
}

// Fill every group of a GDD with a design on that group's points (optionally
// sharing one new point at infinity); the union's blocks cover cross-group
// pairs via the GDD and in-group pairs via the fillers.
inline Design fill_groups(const Design& d, const std::vector<Design>& fillers,
                          std::optional<std::int64_t> infinity = std::nullopt)
{
    if (!fillers.empty() && fillers.size() != d.groups.size())
        throw std::invalid_argument("need one filler per group");
    Design out;
    out.kind = "bibd";
    out.points = d.points;
    if (infinity) out.points.push_back(*infinity);
    for (auto p : out.points) out.groups.push_back({p});
    out.blocks = d.blocks;
    for (std::size_t gi = 0; gi < fillers.size(); ++gi) {
        std::set<std::int64_t> allowed(d.groups[gi].begin(), d.groups[gi].end());
        if (infinity) allowed.insert(*infinity);
        for (auto p : fillers[gi].points)
            if (!allowed.count(p))
                throw std::invalid_argument("filler strays outside its group");
        for (const auto& b : fillers[gi].blocks) out.blocks.push_back(b);
    }
    return out;
}

inline std::vector<std::int64_t> cycle_structure(const Permutation& p)
{
    const std::size_t n = p.size();
    std::vector<char> seen(n, 0);
    std::vector<std::int64_t> lens;
    for (std::size_t i = 0; i < n; ++i) {
        if (seen[i]) continue;
        std::int64_t len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
            seen[j] = 1;
            ++len;
        }
        lens.push_back(len);
    }
    std::sort(lens.begin(), lens.end());
    return lens;
}

inline bool is_automorphism(const Design& d, const Permutation& p)
{
    std::set<std::int64_t> pts(d.points.begin(), d.points.end());
    for (auto x : d.points)
        if (x < 0 || x >= static_cast<std::int64_t>(p.size()) ||
            !pts.count(p[static_cast<std::size_t>(x)]))
            return false;
    auto canon = [&](const std::vector<std::int64_t>& xs, bool map) {
        std::vector<std::int64_t> ys;
        for (auto x : xs) ys.push_back(map ? p[static_cast<std::size_t>(x)] : x);
        std::sort(ys.begin(), ys.end());
        return ys;
    };
    std::multiset<std::vector<std::int64_t>> bs, bs_img, gs, gs_img;
    for (const auto& b : d.blocks) {
        bs.insert(canon(b, false));
        bs_img.insert(canon(b, true));
    }
    for (const auto& g : d.groups) {
        gs.insert(canon(g, false));
        gs_img.insert(canon(g, true));
    }
    return bs == bs_img && gs == gs_img;
}

inline bool is_r_rotational(const Design& d, const Permutation& p, std::int64_t r)
{
    if (!is_automorphism(d, p)) return false;
    const std::int64_t v = static_cast<std::int64_t>(d.points.size());
    if ((v - 1) % r != 0) return false;
    std::vector<std::int64_t> want{1};
    for (std::int64_t i = 0; i < r; ++i) want.push_back((v - 1) / r);
    std::sort(want.begin(), want.end());
    return cycle_structure(p) == want;
}

// Relabel Z_31 so that rho becomes x -> x+r on {0..29} with the fixed point
// sent to 30: pick one representative per cycle and spread each cycle across
// the residue classes mod r.
inline std::vector<std::int64_t> rotation_relabeling(const Permutation& rho, std::int64_t r)
{
    const std::int64_t n = static_cast<std::int64_t>(rho.size()); // 31
    const std::int64_t len = (n - 1) / r;
    std::vector<std::int64_t> sigma(static_cast<std::size_t>(n), -1);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::int64_t cycle_index = 0;
    for (std::int64_t x = 0; x < n; ++x) {
        if (seen[static_cast<std::size_t>(x)]) continue;
        if (rho[static_cast<std::size_t>(x)] == x) {
            seen[static_cast<std::size_t>(x)] = 1;
            sigma[static_cast<std::size_t>(x)] = n - 1; // the rotation's fixed point
            continue;
        }
        std::int64_t y = x;
        for (std::int64_t t = 0; t < len; ++t) {
            if (seen[static_cast<std::size_t>(y)])
                throw std::invalid_argument("cycle length does not divide evenly");
            seen[static_cast<std::size_t>(y)] = 1;
            sigma[static_cast<std::size_t>(y)] = cycle_index + t * r;
            y = rho[static_cast<std::size_t>(y)];
        }
        if (y != x) throw std::invalid_argument("permutation has a cycle longer than (n-1)/r");
        ++cycle_index;
    }
    if (cycle_index != r) throw std::invalid_argument("expected exactly r nontrivial cycles");
    return sigma;
}

struct RotationalBibd {
    Design bibd;
    Permutation gamma; // one fixed point, r cycles of length 30q/r
};

// Assemble an r-rotational (30q+1, 6, 1)-BIBD: develop a (Z_30 x Z_q)-relative
// difference family into a 6-GDD of type 30^q, then fill each group (plus a
// common infinity point) with aligned translates of a (31,6,1)-BIBD relabeled
// so that its rotational automorphism reads x -> x+r.
inline RotationalBibd rotational_bibd(std::int64_t q, std::int64_t r,
                                      const RelativeDifferenceFamily& df,
                                      const Design& bibd31, const Permutation& rho)
{
    if (r != 6 && r != 10) throw std::invalid_argument("r must be 6 or 10");
    if (std::gcd(30 / r, q) != 1) throw std::invalid_argument("30/r and q must be coprime");
    if (df.group.orders() != std::vector<std::int64_t>{30, q} ||
        df.forbidden.size() != 30 || df.k != 6)
        throw std::invalid_argument("need a (Z_30 x Z_q, Z_30 x {0}, 6, 1)-DF");
    if (!is_automorphism(bibd31, rho))
        throw std::invalid_argument("rho is not an automorphism of the base BIBD");

    auto sigma = rotation_relabeling(rho, r);
    const std::int64_t inf = 30 * q;

    Design gdd = develop(df); // points x*q + i, groups Z_30 x {i}
    Design out;
    out.kind = "bibd";
    out.points.resize(static_cast<std::size_t>(30 * q + 1));
    std::iota(out.points.begin(), out.points.end(), 0);
    for (auto p : out.points) out.groups.push_back({p});
    out.blocks = gdd.blocks;

    // B_0 on (Z_30 x {0}) u {inf}, then B_i = B_0 + (0, i)
    for (const auto& b : bibd31.blocks)
        for (std::int64_t i = 0; i < q; ++i) {
            Block nb;
            for (auto x : b) {
                auto y = sigma[static_cast<std::size_t>(x)];
                nb.push_back(y == 30 ? inf : y * q + i);
            }
            std::sort(nb.begin(), nb.end());
            out.blocks.push_back(std::move(nb));
        }

    Permutation gamma(static_cast<std::size_t>(30 * q + 1));
    for (std::int64_t x = 0; x < 30; ++x)
        for (std::int64_t i = 0; i < q; ++i)
            gamma[static_cast<std::size_t>(x * q + i)] = ((x + r) % 30) * q + (i + 1) % q;
    gamma[static_cast<std::size_t>(inf)] = inf;
    return {std::move(out), std::move(gamma)};
}

} // namespace difforge
