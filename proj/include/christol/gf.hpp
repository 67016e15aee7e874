#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "christol/errors.hpp"

namespace christol {

// Element of F_q, stored as the base-p packed value of its power-basis
// coordinates: v = c_0 + c_1*p + ... + c_{e-1}*p^{e-1}, each c_i in [0,p).
// The packing makes the canonical form unique and comparisons cheap.
// All arithmetic goes through FieldCtx.
struct Fq {
    std::uint32_t v = 0;

    friend bool operator==(Fq a, Fq b) { return a.v == b.v; }
    friend bool operator!=(Fq a, Fq b) { return a.v != b.v; }
    friend bool operator<(Fq a, Fq b) { return a.v < b.v; }

    bool is_zero() const { return v == 0; }
};

namespace detail {

inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// F_p[g] helpers on dense low-to-high coefficient vectors; used only for
// modulus validation and the default-modulus search.
inline void fp_trim(std::vector<std::uint32_t>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod b (b monic-normalizable, nonzero), over F_p.
inline std::vector<std::uint32_t> fp_mod(std::vector<std::uint32_t> a,
                                         const std::vector<std::uint32_t>& b,
                                         std::uint32_t p) {
    fp_trim(a);
    const int db = static_cast<int>(b.size()) - 1;
    // inverse of b's leading coefficient
    std::uint64_t lc = b.back(), inv = 1, e = p - 2;
    for (std::uint64_t base = lc; e; e >>= 1, base = base * base % p)
        if (e & 1) inv = inv * base % p;
    while (static_cast<int>(a.size()) - 1 >= db) {
        const int da = static_cast<int>(a.size()) - 1;
        const std::uint64_t f = a.back() * inv % p;
        for (int i = 0; i <= db; ++i) {
            std::uint64_t t = a[da - db + i] + p - f * b[i] % p;
            a[da - db + i] = static_cast<std::uint32_t>(t % p);
        }
        fp_trim(a);
        if (a.empty()) break;
    }
    return a;
}

inline bool fp_irreducible(const std::vector<std::uint32_t>& m, std::uint32_t p) {
    const int e = static_cast<int>(m.size()) - 1;
    if (e < 1) return false;
    // trial division by every monic polynomial of degree 1..e/2
    for (int k = 1; 2 * k <= e; ++k) {
        std::uint64_t count = 1;
        for (int i = 0; i < k; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::vector<std::uint32_t> d(k + 1, 0);
            std::uint64_t t = idx;
            for (int i = 0; i < k; ++i) { d[i] = static_cast<std::uint32_t>(t % p); t /= p; }
            d[k] = 1;
            if (fp_mod(m, d, p).empty()) return false;
        }
    }
    return true;
}

} // namespace detail

// The finite field F_q = F_p[g]/(m(g)), q = p^e. Immutable after
// construction; elements are plain values, so contexts and elements can be
// shared freely across threads.
class FieldCtx {
public:
    FieldCtx(std::uint32_t p, std::uint32_t e,
             std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
        require(detail::is_prime_u32(p), errc::not_prime,
                std::to_string(p) + " is not prime");
        require(e >= 1, errc::degree_mismatch, "extension degree must be >= 1");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            q *= p;
            require(q <= 65536, errc::field_too_large, "q > 2^16 rejected");
        }
        p_ = p;
        e_ = e;
        q_ = static_cast<std::uint32_t>(q);
        if (e == 1) {
            require(!modulus || (modulus->size() == 2 && (*modulus)[1] == 1),
                    errc::degree_mismatch, "modulus degree must equal e");
            modulus_ = {0, 1}; // g - 0; unused in prime-field arithmetic
            return;
        }
        if (modulus) {
            require(modulus->size() == e + 1, errc::degree_mismatch,
                    "modulus degree must equal e");
            require(modulus->back() == 1, errc::degree_mismatch, "modulus must be monic");
            for (auto c : *modulus)
                require(c < p, errc::degree_mismatch, "modulus coefficient out of range");
            require(detail::fp_irreducible(*modulus, p), errc::reducible_modulus,
                    "modulus is reducible over F_p");
            modulus_ = *modulus;
        } else {
            modulus_ = find_default_modulus(p, e);
        }
    }

    std::uint32_t p() const { return p_; }
    std::uint32_t e() const { return e_; }
    std::uint32_t q() const { return q_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    bool operator==(const FieldCtx& o) const {
        return p_ == o.p_ && e_ == o.e_ && modulus_ == o.modulus_;
    }

    Fq zero() const { return {}; }
    Fq one() const { return {1}; }

    // Embedding of the integers: n mod p as a constant of F_q.
    Fq from_int(std::int64_t n) const {
        std::int64_t r = n % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return Fq{static_cast<std::uint32_t>(r)};
    }

    // Element whose packed value is raw (coordinates read off base p).
    Fq from_packed(std::uint32_t raw) const {
        require(raw < q_, errc::degree_mismatch, "packed value out of range");
        return Fq{raw};
    }

    // The generator g (only meaningful for e > 1; equals 0 mod p otherwise).
    Fq gen() const { return e_ > 1 ? Fq{p_} : Fq{0}; }

    std::vector<std::uint32_t> coords(Fq a) const {
        std::vector<std::uint32_t> c(e_);
        std::uint32_t v = a.v;
        for (std::uint32_t i = 0; i < e_; ++i) { c[i] = v % p_; v /= p_; }
        return c;
    }

    Fq add(Fq a, Fq b) const {
        if (e_ == 1) return Fq{(a.v + b.v) % p_};
        std::uint32_t r = 0, m = 1;
        for (std::uint32_t i = 0; i < e_; ++i) {
            r += (a.v % p_ + b.v % p_) % p_ * m;
            a.v /= p_; b.v /= p_; m *= p_;
        }
        return Fq{r};
    }

    Fq neg(Fq a) const {
        if (e_ == 1) return Fq{a.v ? p_ - a.v : 0};
        std::uint32_t r = 0, m = 1;
        for (std::uint32_t i = 0; i < e_; ++i) {
            std::uint32_t c = a.v % p_;
            r += (c ? p_ - c : 0) * m;
            a.v /= p_; m *= p_;
        }
        return Fq{r};
    }

    Fq sub(Fq a, Fq b) const { return add(a, neg(b)); }

    Fq mul(Fq a, Fq b) const {
        if (e_ == 1)
            return Fq{static_cast<std::uint32_t>(
                static_cast<std::uint64_t>(a.v) * b.v % p_)};
        // schoolbook product in the power basis, then reduce by the monic modulus
        std::uint32_t ca[17], cb[17];
        std::uint64_t prod[33] = {};
        for (std::uint32_t i = 0; i < e_; ++i) { ca[i] = a.v % p_; a.v /= p_; }
        for (std::uint32_t i = 0; i < e_; ++i) { cb[i] = b.v % p_; b.v /= p_; }
        for (std::uint32_t i = 0; i < e_; ++i)
            for (std::uint32_t j = 0; j < e_; ++j)
                prod[i + j] += static_cast<std::uint64_t>(ca[i]) * cb[j];
        for (int k = 2 * static_cast<int>(e_) - 2; k >= static_cast<int>(e_); --k) {
            std::uint64_t f = prod[k] % p_;
            if (f == 0) continue;
            for (std::uint32_t i = 0; i < e_; ++i)
                prod[k - e_ + i] += static_cast<std::uint64_t>(p_ - modulus_[i]) % p_ * f;
            prod[k] = 0;
        }
        std::uint32_t r = 0, m = 1;
        for (std::uint32_t i = 0; i < e_; ++i) {
            r += static_cast<std::uint32_t>(prod[i] % p_) * m;
            m *= p_;
        }
        return Fq{r};
    }

    Fq pow(Fq a, std::uint64_t n) const {
        Fq r = one(), base = a;
        while (n) {
            if (n & 1) r = mul(r, base);
            base = mul(base, base);
            n >>= 1;
        }
        return r;
    }

    Fq inv(Fq a) const {
        require(!a.is_zero(), errc::division_by_zero, "inverse of zero");
        return pow(a, q_ - 2);
    }

    Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }

    // a^p (forward) and the unique p-th root a^{p^{e-1}} (inverse).
    Fq frobenius(Fq a, bool inverse = false) const {
        if (!inverse) return pow(a, p_);
        std::uint64_t n = 1;
        for (std::uint32_t i = 0; i + 1 < e_; ++i) n *= p_;
        return pow(a, n);
    }

private:
    static std::vector<std::uint32_t> find_default_modulus(std::uint32_t p, std::uint32_t e) {
        // smallest irreducible monic polynomial in lexicographic order of the
        // low-to-high coefficient list (c_0, ..., c_{e-1}, 1)
        std::vector<std::uint32_t> c(e, 0);
        for (;;) {
            std::vector<std::uint32_t> m(c);
            m.push_back(1);
            if (detail::fp_irreducible(m, p)) return m;
            int i = static_cast<int>(e) - 1;
            while (i >= 0 && c[i] == p - 1) c[i--] = 0;
            require(i >= 0, errc::reducible_modulus, "no irreducible modulus found");
            ++c[i];
        }
    }

    std::uint32_t p_ = 0, e_ = 0, q_ = 0;
    std::vector<std::uint32_t> modulus_;
};

inline FieldCtx make_field(std::uint32_t p, std::uint32_t e,
                           std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
    return FieldCtx(p, e, std::move(modulus));
}

} // namespace christol
