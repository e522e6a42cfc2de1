#ifndef EVASIVE_EXPONENTS_HPP
#define EVASIVE_EXPONENTS_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "field.hpp"

namespace evasive {

/// Power-map exponents d_1 > d_2 > ... > d_n > d, pairwise coprime, with at
/// least k of them coprime to q - 1. All entries are primes, so pairwise
/// coprimality is automatic and plans are canonical.
struct ExponentPlan {
    std::uint64_t d = 0;                         ///< adversary degree budget
    std::vector<std::uint64_t> exponents;        ///< strictly decreasing
    std::vector<bool> invertible;                ///< gcd(exponents[i], q-1) == 1
    std::vector<std::size_t> solved_positions;   ///< k positions, all invertible

    std::size_t n() const { return exponents.size(); }
    std::size_t k() const { return solved_positions.size(); }
};

/// Checks the three plan invariants; throws InvalidParameter on violation.
/// q is needed to recompute the invertibility mask.
inline void validate_plan(const ExponentPlan& plan, std::uint64_t q, std::size_t k) {
    const std::size_t n = plan.exponents.size();
    if (n == 0) throw InvalidParameter("empty exponent plan");
    if (plan.invertible.size() != n) throw InvalidParameter("invertibility mask length mismatch");
    std::size_t inv_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (plan.exponents[i] <= plan.d) throw InvalidParameter("exponent not above degree budget");
        if (i + 1 < n && plan.exponents[i] <= plan.exponents[i + 1])
            throw InvalidParameter("exponents not strictly decreasing");
        const bool coprime = std::gcd(plan.exponents[i], q - 1) == 1;
        if (coprime != static_cast<bool>(plan.invertible[i]))
            throw InvalidParameter("invertibility mask inconsistent with q - 1");
        if (coprime) ++inv_count;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::gcd(plan.exponents[i], plan.exponents[j]) != 1)
                throw InvalidParameter("exponents not pairwise coprime");
        }
    }
    if (inv_count < k) throw InvalidParameter("fewer than k exponents coprime to q - 1");
    if (plan.solved_positions.size() != k) throw InvalidParameter("solved positions must select exactly k columns");
    for (std::size_t pos : plan.solved_positions) {
        if (pos >= n || !plan.invertible[pos])
            throw InvalidParameter("solved position not an invertible exponent");
    }
}

/// Selects n prime exponents above d for a field of size q.
///
/// Primes are scanned in increasing order starting above d. By default a
/// prime dividing q - 1 is skipped until k coprime primes have been taken,
/// after which every prime is accepted; this front-loads the invertible
/// exponents while keeping d_1 small. With allow_noninvertible, primes
/// dividing q - 1 are accepted immediately as long as n - k slots remain for
/// them, matching the minimal coprimality requirement.
///
/// The result is sorted in decreasing order; solved positions are the k
/// largest exponents coprime to q - 1.
inline ExponentPlan select_exponents(std::size_t n, std::uint64_t d, std::uint64_t q, std::size_t k,
                                     bool allow_noninvertible = false) {
    if (k < 1 || k > n) throw InvalidParameter("need 1 <= k <= n");
    if (d < 1) throw InvalidParameter("degree budget must be >= 1");
    if (q < 3) throw InvalidParameter("field size must be >= 3");

    std::vector<std::uint64_t> taken;
    taken.reserve(n);
    std::size_t coprime_count = 0;
    std::size_t noninv_taken = 0;

    // q - 1 has finitely many prime factors, so coprime primes are never
    // scarce; the cap only guards degenerate inputs.
    const std::uint64_t scan_cap = d + 10'000'000ull;
    for (std::uint64_t cand = d + 1; taken.size() < n; ++cand) {
        if (cand > scan_cap)
            throw InsufficientInvertibleExponents("prime scan exceeded its sanity cap");
        if (!detail::is_prime_u64(cand)) continue;
        const bool coprime = std::gcd(cand, q - 1) == 1;
        if (coprime) {
            taken.push_back(cand);
            ++coprime_count;
        } else if (allow_noninvertible ? noninv_taken < n - k : coprime_count >= k) {
            taken.push_back(cand);
            ++noninv_taken;
        }
    }

    ExponentPlan plan;
    plan.d = d;
    plan.exponents.assign(taken.rbegin(), taken.rend());
    plan.invertible.resize(n);
    for (std::size_t i = 0; i < n; ++i) plan.invertible[i] = std::gcd(plan.exponents[i], q - 1) == 1;
    for (std::size_t i = 0; i < n && plan.solved_positions.size() < k; ++i) {
        if (plan.invertible[i]) plan.solved_positions.push_back(i);
    }
    validate_plan(plan, q, k);
    return plan;
}

} // namespace evasive

#endif // EVASIVE_EXPONENTS_HPP
