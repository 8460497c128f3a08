#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace difforge {

// Finite abelian group Z_{n1} x ... x Z_{nt}. Elements are mixed-radix
// encoded into a single integer index, first coordinate most significant.
class AbelianGroup {
public:
    AbelianGroup() : AbelianGroup(std::vector<std::int64_t>{1}) {}

    explicit AbelianGroup(std::vector<std::int64_t> orders)
        : orders_(std::move(orders))
    {
        if (orders_.empty())
            throw std::invalid_argument("group needs at least one cyclic factor");
        order_ = 1;
        for (auto n : orders_) {
            if (n < 1) throw std::invalid_argument("cyclic factor order must be >= 1");
            order_ *= n;
        }
        strides_.resize(orders_.size());
        std::int64_t s = 1;
        for (std::size_t i = orders_.size(); i-- > 0;) {
            strides_[i] = s;
            s *= orders_[i];
        }
    }

    std::int64_t order() const { return order_; }
    const std::vector<std::int64_t>& orders() const { return orders_; }
    std::size_t rank() const { return orders_.size(); }

    std::int64_t encode(const std::vector<std::int64_t>& coords) const
    {
        if (coords.size() != orders_.size())
            throw std::invalid_argument("coordinate count mismatch");
        std::int64_t e = 0;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            std::int64_t c = coords[i] % orders_[i];
            if (c < 0) c += orders_[i];
            e += c * strides_[i];
        }
        return e;
    }

    std::vector<std::int64_t> decode(std::int64_t e) const
    {
        std::vector<std::int64_t> coords(orders_.size());
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            coords[i] = (e / strides_[i]) % orders_[i];
        }
        return coords;
    }

    std::int64_t add(std::int64_t a, std::int64_t b) const
    {
        std::int64_t r = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            std::int64_t ca = (a / strides_[i]) % orders_[i];
            std::int64_t cb = (b / strides_[i]) % orders_[i];
            std::int64_t c = ca + cb;
            if (c >= orders_[i]) c -= orders_[i];
            r += c * strides_[i];
        }
        return r;
    }

    std::int64_t neg(std::int64_t a) const
    {
        std::int64_t r = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            std::int64_t ca = (a / strides_[i]) % orders_[i];
            std::int64_t c = ca == 0 ? 0 : orders_[i] - ca;
            r += c * strides_[i];
        }
        return r;
    }

    std::int64_t sub(std::int64_t a, std::int64_t b) const { return add(a, neg(b)); }

    std::int64_t scale(std::int64_t a, std::int64_t m) const
    {
        std::int64_t r = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            std::int64_t ca = (a / strides_[i]) % orders_[i];
            std::int64_t c = (ca * (m % orders_[i])) % orders_[i];
            if (c < 0) c += orders_[i];
            r += c * strides_[i];
        }
        return r;
    }

    bool is_involution(std::int64_t a) const { return a != 0 && add(a, a) == 0; }

    // Product with another group, this one's coordinates first.
    AbelianGroup product(const AbelianGroup& other) const
    {
        std::vector<std::int64_t> orders = orders_;
        orders.insert(orders.end(), other.orders_.begin(), other.orders_.end());
        return AbelianGroup(std::move(orders));
    }

    bool operator==(const AbelianGroup& o) const { return orders_ == o.orders_; }
    bool operator!=(const AbelianGroup& o) const { return !(*this == o); }

    std::string describe() const
    {
        std::string s;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            if (i) s += "x";
            s += "Z" + std::to_string(orders_[i]);
        }
        return s;
    }

    // All elements of the subgroup generated by the given elements.
    std::vector<std::int64_t> subgroup_generated(const std::vector<std::int64_t>& gens) const
    {
        std::vector<char> in(static_cast<std::size_t>(order_), 0);
        std::vector<std::int64_t> members{0};
        in[0] = 1;
        for (std::size_t head = 0; head < members.size(); ++head) {
            for (auto g : gens) {
                std::int64_t x = add(members[head], g);
                if (!in[static_cast<std::size_t>(x)]) {
                    in[static_cast<std::size_t>(x)] = 1;
                    members.push_back(x);
                }
            }
        }
        std::sort(members.begin(), members.end());
        return members;
    }

    bool is_subgroup(const std::vector<std::int64_t>& elems) const
    {
        if (elems.empty()) return false;
        std::vector<char> in(static_cast<std::size_t>(order_), 0);
        for (auto e : elems) {
            if (e < 0 || e >= order_ || in[static_cast<std::size_t>(e)]) return false;
            in[static_cast<std::size_t>(e)] = 1;
        }
        if (!in[0]) return false;
        for (auto a : elems)
            for (auto b : elems)
                if (!in[static_cast<std::size_t>(sub(a, b))]) return false;
        return true;
    }

private:
    std::vector<std::int64_t> orders_;
    std::vector<std::int64_t> strides_;
    std::int64_t order_ = 1;
};

// Chinese remainder isomorphism Z_h x Z_q -> Z_{hq} for coprime h, q.
class CrtIso {
public:
    CrtIso(std::int64_t h, std::int64_t q) : h_(h), q_(q)
    {
        if (h < 1 || q < 1 || std::gcd(h, q) != 1)
            throw std::invalid_argument("crt_iso requires coprime positive moduli");
    }

    std::int64_t forward(std::int64_t a, std::int64_t b) const
    {
        // unique x mod hq with x = a (mod h), x = b (mod q)
        a = ((a % h_) + h_) % h_;
        b = ((b % q_) + q_) % q_;
        for (std::int64_t x = b; ; x += q_) {
            if (x % h_ == a) return x;
        }
    }

    std::pair<std::int64_t, std::int64_t> backward(std::int64_t x) const
    {
        x = ((x % (h_ * q_)) + h_ * q_) % (h_ * q_);
        return {x % h_, x % q_};
    }

    std::int64_t h() const { return h_; }
    std::int64_t q() const { return q_; }

private:
    std::int64_t h_, q_;
};

} // namespace difforge
