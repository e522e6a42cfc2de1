#ifndef EVASIVE_POLYNOMIAL_HPP
#define EVASIVE_POLYNOMIAL_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "field.hpp"

namespace evasive {

/// One monomial term: exponent per variable plus a nonzero coefficient.
struct Term {
    std::vector<std::uint32_t> exps;
    Elem coeff = 0;
};

namespace detail {

inline std::uint64_t term_degree(const std::vector<std::uint32_t>& exps) {
    std::uint64_t d = 0;
    for (auto e : exps) d += e;
    return d;
}

/// Graded lexicographic order, ascending: lower total degree first; within a
/// degree, lexicographically larger exponent vectors first (x1-heavy terms
/// precede x2-heavy ones). This is the column order of every evaluation
/// matrix in the library.
inline bool grlex_less(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    const std::uint64_t da = term_degree(a), db = term_degree(b);
    if (da != db) return da < db;
    return a > b; // lexicographically larger vector sorts earlier
}

} // namespace detail

/// Sparse multivariate polynomial over a finite field. Terms are kept in
/// graded-lex order with distinct exponent vectors and nonzero coefficients.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial from_terms(const Field& f, std::size_t nvars, std::vector<Term> terms) {
        Polynomial p(nvars);
        std::map<std::vector<std::uint32_t>, Elem, decltype(&detail::grlex_less)> acc(&detail::grlex_less);
        for (auto& t : terms) {
            if (t.exps.size() != nvars) throw InvalidParameter("term arity mismatch");
            auto [it, inserted] = acc.try_emplace(t.exps, t.coeff);
            if (!inserted) it->second = f.add(it->second, t.coeff);
        }
        for (auto& [exps, coeff] : acc) {
            if (coeff == 0) continue;
            p.terms_.push_back({exps, coeff});
            p.degree_ = std::max(p.degree_, detail::term_degree(exps));
        }
        return p;
    }

    static Polynomial constant(const Field& f, std::size_t nvars, Elem c) {
        return from_terms(f, nvars, {{std::vector<std::uint32_t>(nvars, 0), c}});
    }

    std::size_t nvars() const { return nvars_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::uint64_t total_degree() const { return degree_; }

    Elem evaluate(const Field& f, std::span<const Elem> point) const {
        if (point.size() != nvars_) throw InvalidParameter("evaluation point arity mismatch");
        Elem acc = 0;
        for (const auto& t : terms_) {
            Elem m = t.coeff;
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (t.exps[i] != 0) m = f.mul(m, f.pow(point[i], t.exps[i]));
            }
            acc = f.add(acc, m);
        }
        return acc;
    }

    bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  private:
    std::size_t nvars_ = 0;
    std::vector<Term> terms_;
    std::uint64_t degree_ = 0;
};

inline bool operator==(const Term& a, const Term& b) { return a.exps == b.exps && a.coeff == b.coeff; }

/// All exponent vectors in nvars variables with total degree <= bound, in
/// graded-lex order (the shared column order for evaluation matrices).
inline std::vector<std::vector<std::uint32_t>> monomials_up_to_degree(std::size_t nvars, std::uint32_t bound) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur(nvars, 0);
    // compositions of `deg` into nvars parts, first part largest first
    auto emit = [&](auto&& self, std::size_t var, std::uint32_t remaining) -> void {
        if (var + 1 == nvars) {
            cur[var] = remaining;
            out.push_back(cur);
            return;
        }
        for (std::uint32_t e = remaining + 1; e-- > 0;) {
            cur[var] = e;
            self(self, var + 1, remaining - e);
        }
    };
    if (nvars == 0) {
        out.push_back({});
        return out;
    }
    for (std::uint32_t deg = 0; deg <= bound; ++deg) emit(emit, 0, deg);
    return out;
}

} // namespace evasive

#endif // EVASIVE_POLYNOMIAL_HPP
