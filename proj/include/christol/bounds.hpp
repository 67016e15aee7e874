#pragma once

#include <cstdint>
#include <limits>

namespace christol {

// floor(log_q r) for r >= 1; -1 sentinel for r = 0 (the exceptional set
// E(f) is empty).
inline int t0_of(std::uint32_t q, long long r) {
    if (r <= 0) return -1;
    int t = 0;
    long long power = 1;
    while (power <= r / static_cast<long long>(q)) {
        power *= q;
        ++t;
    }
    return t;
}

// A bound that is either an exact 64-bit integer or, when the value
// exceeds 2^64, a (base, exponent) certificate. general-style bounds carry
// a second summand exponent (plus_exponent = -1 when absent).
struct BoundValue {
    bool exact = false;
    std::uint64_t value = 0;
    std::uint32_t base = 0;
    long long exponent = 0;
    long long plus_exponent = -1;
};

namespace detail {

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

inline bool checked_pow_u64(std::uint64_t base, long long exp, std::uint64_t& out) {
    std::uint64_t r = 1;
    for (long long i = 0; i < exp; ++i) {
        if (base != 0 && r > kU64Max / base) return false;
        r *= base;
    }
    out = r;
    return true;
}

inline bool checked_add_u64(std::uint64_t a, std::uint64_t b, std::uint64_t& out) {
    if (a > kU64Max - b) return false;
    out = a + b;
    return true;
}

// saturating product helper for the Ore exponent
inline long long sat_mul_ll(long long a, long long b) {
    unsigned __int128 prod = static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
    if (prod > static_cast<unsigned __int128>(std::numeric_limits<long long>::max()))
        return std::numeric_limits<long long>::max();
    return static_cast<long long>(prod);
}

} // namespace detail

// value = q^exponent + add (with add = 0 or q^plus_exponent), exact when it
// fits in 64 bits
inline BoundValue make_bound(std::uint32_t q, long long exponent, long long plus_exponent) {
    BoundValue b;
    b.base = q;
    b.exponent = exponent;
    b.plus_exponent = plus_exponent;
    std::uint64_t main_term = 0, add_term = 0, total = 0;
    bool ok = exponent <= 64 && detail::checked_pow_u64(q, exponent, main_term);
    if (ok && plus_exponent >= 0)
        ok = plus_exponent <= 64 && detail::checked_pow_u64(q, plus_exponent, add_term) &&
             detail::checked_add_u64(main_term, add_term, total);
    else
        total = main_term;
    b.exact = ok;
    b.value = ok ? total : 0;
    return b;
}

// bound 1 + q^exponent
inline BoundValue make_bound_one_plus(std::uint32_t q, long long exponent) {
    BoundValue b;
    b.base = q;
    b.exponent = exponent;
    b.plus_exponent = 0; // the "+1"
    std::uint64_t main_term = 0, total = 0;
    bool ok = exponent <= 64 && detail::checked_pow_u64(q, exponent, main_term) &&
              detail::checked_add_u64(main_term, 1, total);
    b.exact = ok;
    b.value = ok ? total : 0;
    return b;
}

// Every bound the source results state, as exact integers where 64 bits
// suffice and as exponent certificates beyond that.
struct BoundSet {
    bool has_smooth = false;
    BoundValue smooth_bound;            // 1 + q^{(h+1)d}
    BoundValue general_bound;           // q^{(h+1)d+1} + (r = 0 ? 0 : q^{t0})
    long long forward_smooth = 0;       // exponent 1 + (h+1)d
    long long forward_general = 0;      // exponent 1 + (h+1)d + r
    long long forward_general_worstcase = 0; // exponent (3h+1)d - h + 1
    long long ore_baseline_exponent = 0;     // d(4h q^d + 1)
    long long bridy_exponent = 0;            // h + d + g_P - 1
    long long bridy_rect_exponent = 0;       // h d
    long long riemann_gP_cap = 0;            // (h-1)(d-1), clamped at 0
};

inline BoundSet compute_bounds(std::uint32_t q, int d, int h, long long r, int t0,
                               long long g_P, bool smooth) {
    BoundSet bs;
    const long long hd1 = static_cast<long long>(h + 1) * d;
    bs.has_smooth = smooth;
    if (smooth) bs.smooth_bound = make_bound_one_plus(q, hd1);
    bs.general_bound = make_bound(q, hd1 + 1, r == 0 ? -1 : std::max(t0, 0));
    bs.forward_smooth = 1 + hd1;
    bs.forward_general = 1 + hd1 + r;
    bs.forward_general_worstcase =
        static_cast<long long>(3 * h + 1) * d - h + 1;
    long long qd = 1;
    for (int i = 0; i < d; ++i) qd = detail::sat_mul_ll(qd, q);
    bs.ore_baseline_exponent =
        detail::sat_mul_ll(d, detail::sat_mul_ll(4 * static_cast<long long>(h), qd) + 1);
    bs.bridy_exponent = h + d + g_P - 1;
    bs.bridy_rect_exponent = static_cast<long long>(h) * d;
    bs.riemann_gP_cap = std::max(0LL, static_cast<long long>(h - 1) * (d - 1));
    return bs;
}

} // namespace christol
