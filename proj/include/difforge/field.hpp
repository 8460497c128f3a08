#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "group.hpp"

namespace difforge {

inline bool is_prime(std::int64_t n)
{
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// q = p^e with p prime, e >= 1; returns nullopt if q is not a prime power.
inline std::optional<std::pair<std::int64_t, int>> prime_power_split(std::int64_t q)
{
    if (q < 2) return std::nullopt;
    for (std::int64_t p = 2; p * p <= q; ++p) {
        if (q % p == 0) {
            int e = 0;
            std::int64_t m = q;
            while (m % p == 0) { m /= p; ++e; }
            if (m != 1) return std::nullopt;
            return std::make_pair(p, e);
        }
    }
    return std::make_pair(q, 1);
}

// GF(p^e) with a primitive modulus polynomial. Elements are encoded as
// integers in [0, q): sum of c_i * p^i over the polynomial coordinates.
// Multiplication goes through eagerly built log/exp tables.
class FiniteField {
public:
    static constexpr std::int64_t kDefaultMaxOrder = std::int64_t{1} << 20;

    FiniteField() : FiniteField(2, 1) {}

    // modulus: monic degree-e polynomial over F_p, coefficients ascending.
    // When absent: e=1 uses x - w with w the least primitive root; e>1 scans
    // for the lexicographically least primitive monic polynomial.
    FiniteField(std::int64_t p, int e,
                std::optional<std::vector<std::int64_t>> modulus = std::nullopt,
                std::int64_t max_order = kDefaultMaxOrder)
        : p_(p), e_(e)
    {
        if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
        if (e < 1) throw std::invalid_argument("extension degree must be >= 1");
        q_ = 1;
        for (int i = 0; i < e; ++i) {
            q_ *= p;
            if (q_ > max_order) throw std::invalid_argument("field order exceeds configured limit");
        }
        if (modulus) {
            modulus_ = normalize_modulus(*modulus);
            if (e_ == 1) {
                // x - w form: root is w = -c0
                omega_ = ((-modulus_[0]) % p_ + p_) % p_;
                if (!build_tables(omega_))
                    throw std::invalid_argument("supplied modulus is not primitive");
            } else {
                omega_ = p_; // the residue class of x
                if (!build_tables(omega_))
                    throw std::invalid_argument("supplied modulus is not primitive");
            }
        } else if (e_ == 1) {
            for (std::int64_t w = p_ == 2 ? 1 : 2; ; ++w) {
                if (w >= p_) throw std::logic_error("no primitive root found");
                if (build_tables(w)) { omega_ = w; break; }
            }
            modulus_ = {((-omega_) % p_ + p_) % p_, 1};
        } else {
            if (!scan_primitive_modulus())
                throw std::logic_error("no primitive polynomial found");
        }
    }

    std::int64_t p() const { return p_; }
    int e() const { return e_; }
    std::int64_t q() const { return q_; }
    std::int64_t omega() const { return omega_; }
    const std::vector<std::int64_t>& modulus() const { return modulus_; }

    // Additive group of the field: e copies of Z_p, encoding-compatible
    // (c_{e-1} most significant digit; index equals the field encoding).
    AbelianGroup additive_group() const
    {
        return AbelianGroup(std::vector<std::int64_t>(static_cast<std::size_t>(e_), p_));
    }

    std::int64_t add(std::int64_t a, std::int64_t b) const
    {
        std::int64_t r = 0, s = 1;
        for (int i = 0; i < e_; ++i) {
            std::int64_t c = (a % p_ + b % p_) % p_;
            r += c * s;
            s *= p_;
            a /= p_;
            b /= p_;
        }
        return r;
    }

    std::int64_t neg(std::int64_t a) const
    {
        std::int64_t r = 0, s = 1;
        for (int i = 0; i < e_; ++i) {
            std::int64_t c = (p_ - a % p_) % p_;
            r += c * s;
            s *= p_;
            a /= p_;
        }
        return r;
    }

    std::int64_t sub(std::int64_t a, std::int64_t b) const { return add(a, neg(b)); }

    std::int64_t mul(std::int64_t a, std::int64_t b) const
    {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (q_ - 1)];
    }

    std::int64_t inv(std::int64_t a) const
    {
        if (a == 0) throw std::domain_error("division by zero");
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }

    std::int64_t pow_omega(std::int64_t k) const
    {
        k %= (q_ - 1);
        if (k < 0) k += q_ - 1;
        return exp_[k];
    }

    // Canonical embedding of an integer: n * 1 in the prime subfield.
    std::int64_t from_int(std::int64_t n) const
    {
        std::int64_t r = n % p_;
        if (r < 0) r += p_;
        return r;
    }

    std::int64_t discrete_log(std::int64_t x) const
    {
        if (x <= 0 || x >= q_) throw std::domain_error("discrete_log needs a nonzero field element");
        return log_[x];
    }

    // C_i^{d,q} = omega^i * C_0^{d,q}, the i-th cyclotomic class of index d.
    std::vector<std::int64_t> cyclotomic_class(std::int64_t d, std::int64_t i) const
    {
        if (d < 1 || (q_ - 1) % d != 0) throw std::invalid_argument("d must divide q-1");
        if (i < 0 || i >= d) throw std::invalid_argument("class index out of range");
        std::vector<std::int64_t> cls;
        cls.reserve(static_cast<std::size_t>((q_ - 1) / d));
        for (std::int64_t j = i; j < q_ - 1; j += d)
            cls.push_back(exp_[j]);
        std::sort(cls.begin(), cls.end());
        return cls;
    }

    std::int64_t coset_index(std::int64_t d, std::int64_t x) const
    {
        if ((q_ - 1) % d != 0) throw std::invalid_argument("d must divide q-1");
        return discrete_log(x) % d;
    }

    // True iff L has exactly d nonzero members hitting all d cosets of the
    // d-th power subgroup, each once.
    bool is_system_of_representatives(std::int64_t d, const std::vector<std::int64_t>& elems) const
    {
        if ((q_ - 1) % d != 0) return false;
        if (static_cast<std::int64_t>(elems.size()) != d) return false;
        std::vector<char> hit(static_cast<std::size_t>(d), 0);
        for (auto x : elems) {
            if (x <= 0 || x >= q_) return false;
            std::int64_t c = log_[x] % d;
            if (hit[static_cast<std::size_t>(c)]) return false;
            hit[static_cast<std::size_t>(c)] = 1;
        }
        return true;
    }

    std::int64_t trace(std::int64_t x) const
    {
        // Tr(x) = x + x^p + ... + x^{p^{e-1}}, lands in the prime subfield
        std::int64_t t = 0, y = x;
        for (int i = 0; i < e_; ++i) {
            t = add(t, y);
            std::int64_t z = y;
            for (std::int64_t j = 1; j < p_; ++j) z = mul(z, y);
            y = z;
        }
        return t;
    }

private:
    std::vector<std::int64_t> normalize_modulus(std::vector<std::int64_t> m) const
    {
        if (static_cast<int>(m.size()) != e_ + 1)
            throw std::invalid_argument("modulus must have degree e");
        for (auto& c : m) { c %= p_; if (c < 0) c += p_; }
        if (m.back() != 1) throw std::invalid_argument("modulus must be monic");
        return m;
    }

    // Polynomial multiply-by-x modulo the modulus, on encoded elements.
    std::int64_t mul_by_x_mod(std::int64_t a) const
    {
        std::vector<std::int64_t> c(static_cast<std::size_t>(e_) + 1, 0);
        std::int64_t t = a;
        for (int i = 0; i < e_; ++i) { c[static_cast<std::size_t>(i) + 1] = t % p_; t /= p_; }
        std::int64_t lead = c[static_cast<std::size_t>(e_)];
        if (lead != 0) {
            for (int i = 0; i < e_; ++i)
                c[static_cast<std::size_t>(i)] =
                    ((c[static_cast<std::size_t>(i)] - lead * modulus_[static_cast<std::size_t>(i)]) % p_ + p_) % p_;
        }
        std::int64_t r = 0, s = 1;
        for (int i = 0; i < e_; ++i) { r += c[static_cast<std::size_t>(i)] * s; s *= p_; }
        return r;
    }

    // Fills exp_/log_ by iterating multiplication by the candidate generator.
    // Returns false if the candidate has multiplicative order < q-1.
    bool build_tables(std::int64_t gen)
    {
        exp_.assign(static_cast<std::size_t>(q_ - 1), 0);
        log_.assign(static_cast<std::size_t>(q_), -1);
        std::int64_t x = 1;
        for (std::int64_t k = 0; k < q_ - 1; ++k) {
            if (log_[static_cast<std::size_t>(x)] != -1) return false; // early cycle
            exp_[static_cast<std::size_t>(k)] = x;
            log_[static_cast<std::size_t>(x)] = k;
            x = raw_mul(x, gen);
        }
        return x == 1;
    }

    // Schoolbook multiplication used only while the tables are being built.
    std::int64_t raw_mul(std::int64_t a, std::int64_t b) const
    {
        if (e_ == 1) return (a * b) % p_;
        std::int64_t r = 0;
        std::int64_t shifted = a;
        std::int64_t bb = b;
        for (int i = 0; i < e_; ++i) {
            std::int64_t digit = bb % p_;
            bb /= p_;
            if (digit != 0) {
                // r += digit * shifted (digit-wise)
                std::int64_t acc = 0, s = 1, t = shifted;
                for (int j = 0; j < e_; ++j) {
                    acc += ((t % p_) * digit % p_) * s;
                    s *= p_;
                    t /= p_;
                }
                // digit-wise add
                std::int64_t res = 0;
                s = 1;
                std::int64_t x = r, y = acc;
                for (int j = 0; j < e_; ++j) {
                    res += ((x % p_) + (y % p_)) % p_ * s;
                    s *= p_;
                    x /= p_;
                    y /= p_;
                }
                r = res;
            }
            shifted = mul_by_x_mod(shifted);
        }
        return r;
    }

    bool scan_primitive_modulus()
    {
        // ascending coefficient tuples (c0, c1, ..., c_{e-1}), monic
        std::vector<std::int64_t> c(static_cast<std::size_t>(e_), 0);
        while (true) {
            modulus_ = c;
            modulus_.push_back(1);
            omega_ = p_;
            if (build_tables(omega_)) return true;
            int i = e_ - 1;
            while (i >= 0 && c[static_cast<std::size_t>(i)] == p_ - 1) {
                c[static_cast<std::size_t>(i)] = 0;
                --i;
            }
            if (i < 0) return false;
            ++c[static_cast<std::size_t>(i)];
        }
    }

    std::int64_t p_;
    int e_;
    std::int64_t q_ = 0;
    std::int64_t omega_ = 0;
    std::vector<std::int64_t> modulus_;
    std::vector<std::int64_t> exp_;
    std::vector<std::int64_t> log_;
};

} // namespace difforge
