#ifndef EVASIVE_REGULAR_MATRIX_HPP
#define EVASIVE_REGULAR_MATRIX_HPP

#include <cstdint>
#include <vector>

#include "linalg.hpp"

namespace evasive {

/// A k x n matrix intended to be k-regular: every k x k minor nonsingular.
struct RegularMatrix {
    std::size_t k = 0;
    std::size_t n = 0;
    Mat entries;               ///< k x n
    std::vector<Elem> gammas;  ///< generators when Vandermonde-built, else empty
};

struct MinorRecord {
    std::vector<std::size_t> cols; ///< ascending column subset
    Elem determinant = 0;
};

/// Outcome of exhaustive minor enumeration.
struct RegularityCheck {
    bool ok = false;
    std::vector<MinorRecord> minors;         ///< all C(n, k) minors when ok
    std::vector<std::size_t> failing_cols;   ///< first zero minor otherwise
};

/// A_{i,j} = gamma_j^i for i = 1..k, gamma_j the j-th nonzero element in
/// canonical order (gamma_j = j in prime fields). Needs q > n distinct
/// nonzero generators.
inline RegularMatrix vandermonde_matrix(const Field& f, std::size_t k, std::size_t n) {
    if (k < 1 || k > n) throw InvalidParameter("need 1 <= k <= n");
    if (f.q() <= n) throw FieldTooSmall("Vandermonde needs q > n distinct nonzero generators");
    RegularMatrix m;
    m.k = k;
    m.n = n;
    m.entries = Mat(k, n);
    m.gammas.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Elem gamma = static_cast<Elem>(j + 1);
        m.gammas[j] = gamma;
        Elem power = gamma;
        for (std::size_t i = 0; i < k; ++i) {
            m.entries.at(i, j) = power;
            power = f.mul(power, gamma);
        }
    }
    return m;
}

namespace detail {

/// Lexicographic k-combination stepper over {0, ..., n-1}.
inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t k = c.size();
    for (std::size_t ii = 0; ii < k; ++ii) {
        const std::size_t i = k - 1 - ii;
        if (c[i] + (k - i) < n) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace detail

/// Enumerates all C(n, k) column subsets of A in lexicographic order and
/// computes each minor determinant. Returns either the full certificate or
/// the first offending subset. Work is C(n, k) * k^3 elimination steps;
/// exceeding work_budget throws WorkBudgetExceeded (the caller can then fall
/// back on the Vandermonde construction invariant).
inline RegularityCheck check_k_regular(const Field& f, const Mat& A,
                                       std::uint64_t work_budget = 100'000'000ull) {
    const std::size_t k = A.rows;
    const std::size_t n = A.cols;
    if (k < 1 || k > n) throw InvalidParameter("need 1 <= k <= n");

    const auto count = detail::checked_binomial(n, k);
    const auto work = count ? detail::checked_mul(*count, static_cast<std::uint64_t>(k) * k * k)
                            : std::nullopt;
    if (!work || *work > work_budget)
        throw WorkBudgetExceeded("minor enumeration exceeds the work budget");

    RegularityCheck out;
    out.minors.reserve(static_cast<std::size_t>(*count));
    std::vector<std::size_t> cols(k);
    for (std::size_t i = 0; i < k; ++i) cols[i] = i;
    Mat minor(k, k);
    do {
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) minor.at(r, c) = A.at(r, cols[c]);
        const Elem dm = det(f, minor);
        if (dm == 0) {
            out.ok = false;
            out.minors.clear();
            out.failing_cols = cols;
            return out;
        }
        out.minors.push_back({cols, dm});
    } while (detail::next_combination(cols, n));
    out.ok = true;
    return out;
}

inline RegularityCheck check_k_regular(const Field& f, const RegularMatrix& m,
                                       std::uint64_t work_budget = 100'000'000ull) {
    return check_k_regular(f, m.entries, work_budget);
}

} // namespace evasive

#endif // EVASIVE_REGULAR_MATRIX_HPP
