#ifndef EVASIVE_COMMON_HPP
#define EVASIVE_COMMON_HPP

#include <cstdint>
#include <optional>

#include "errors.hpp"

namespace evasive {

/// Canonical field element encoding: an integer in [0, q).
/// For extension fields the base-p digits of the value are the coefficients
/// of the residue polynomial, constant term in the least significant digit.
using Elem = std::uint32_t;

namespace detail {

inline std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
    return r;
}

/// base^exp as an exact u64, or nullopt on overflow.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    while (exp) {
        if (exp & 1) {
            auto m = checked_mul(r, base);
            if (!m) return std::nullopt;
            r = *m;
        }
        exp >>= 1;
        if (exp) {
            auto s = checked_mul(base, base);
            if (!s) return std::nullopt;
            base = *s;
        }
    }
    return r;
}

inline std::uint64_t pow_or_throw(std::uint64_t base, std::uint64_t exp, const char* what) {
    auto r = checked_pow(base, exp);
    if (!r) throw UnsupportedSize(what);
    return *r;
}

/// C(n, k) as an exact u64, or nullopt on overflow.
inline std::optional<std::uint64_t> checked_binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // r * (n - k + i) is divisible by i once folded in
        auto m = checked_mul(r, n - k + i);
        if (!m) return std::nullopt;
        r = *m / i;
    }
    return r;
}

} // namespace detail

} // namespace evasive

#endif // EVASIVE_COMMON_HPP
