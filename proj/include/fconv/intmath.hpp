#pragma once

#include <cstdint>
#include <limits>
#include <optional>

namespace fconv {

// All tensor values are exact signed 64-bit integers; operations that could
// exceed this capacity must be rejected up front, never wrapped.
using Int = std::int64_t;
using i128 = __int128;
using u128 = unsigned __int128;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    if (((a | b) >> 32) == 0) return (a * b) % m;
    return static_cast<std::uint64_t>(u128(a) * b % m);
}

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    std::uint64_t s = a + b;
    if (s >= m || s < a) s -= m;
    return s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return a >= b ? a - b : a + (m - b);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Inverse in F_p, p prime.
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    return pow_mod(a, p - 2, p);
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

inline std::uint64_t next_pow2(std::uint64_t n) {
    std::uint64_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

inline std::optional<Int> checked_mul(Int a, Int b) {
    i128 p = i128(a) * b;
    if (p > i128(std::numeric_limits<Int>::max()) || p < i128(std::numeric_limits<Int>::min()))
        return std::nullopt;
    return static_cast<Int>(p);
}

inline std::optional<Int> checked_pow(Int base, int exp) {
    Int r = 1;
    for (int i = 0; i < exp; ++i) {
        auto p = checked_mul(r, base);
        if (!p) return std::nullopt;
        r = *p;
    }
    return r;
}

}  // namespace fconv
