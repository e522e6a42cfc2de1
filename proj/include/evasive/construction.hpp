#ifndef EVASIVE_CONSTRUCTION_HPP
#define EVASIVE_CONSTRUCTION_HPP

#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "exponents.hpp"
#include "polynomial.hpp"
#include "regular_matrix.hpp"

namespace evasive {

/// Free coordinates of a member point, one digit per non-solved position,
/// in block order.
struct PointIndex {
    std::vector<Elem> digits;
    bool operator==(const PointIndex& o) const { return digits == o.digits; }
};

namespace detail {

/// Per-position power maps x -> x^{d_j} over one field, tabulated when the
/// field is small enough. Lifts matrix entries into the evaluation field by
/// value, which is exact for constants below the characteristic. Owns its
/// data, so the enclosing object stays copyable.
class BlockEvaluator {
  public:
    BlockEvaluator() = default;

    BlockEvaluator(Field eval_field, Mat entries, std::vector<std::uint64_t> exps)
        : field_(std::move(eval_field)), entries_(std::move(entries)), exps_(std::move(exps)) {
        static constexpr std::uint32_t kTableCap = 1u << 18;
        if (field_.q() <= kTableCap) {
            tables_.resize(exps_.size());
            for (std::size_t j = 0; j < exps_.size(); ++j) {
                tables_[j].resize(field_.q());
                for (Elem v = 0; v < field_.q(); ++v) tables_[j][v] = field_.pow(v, exps_[j]);
            }
        }
    }

    const Field& field() const { return field_; }

    Elem power(std::size_t j, Elem v) const {
        return tables_.empty() ? field_.pow(v, exps_[j]) : tables_[j][v];
    }

    /// All k rows vanish on one block of coordinates?
    bool block_member(std::span<const Elem> block) const {
        const std::size_t k = entries_.rows, m = entries_.cols;
        for (std::size_t i = 0; i < k; ++i) {
            Elem acc = 0;
            for (std::size_t j = 0; j < m; ++j) {
                acc = field_.add(acc, field_.mul(entries_.at(i, j), power(j, block[j])));
            }
            if (acc != 0) return false;
        }
        return true;
    }

  private:
    Field field_{2};
    Mat entries_;
    std::vector<std::uint64_t> exps_;
    std::vector<std::vector<Elem>> tables_;
};

} // namespace detail

/// The evasive subset of F_q^n cut out by k power-sum polynomials per block:
/// f_i(x) = sum_j A_{i,j} x_j^{d_j} on each of the n / m_block coordinate
/// blocks. Members are the points where every f_i vanishes on every block;
/// the explicit bijection maps free coordinates to members and back.
///
/// Immutable and shareable across threads once built.
class Construction {
  public:
    /// Full pipeline: exponent selection plus Vandermonde matrix. m_block = n
    /// gives the single-block construction; a proper divisor m_block with
    /// k < m_block <= n gives the Cartesian-product variant.
    static Construction build(const Field& f, std::size_t n, std::size_t k, std::uint64_t d,
                              std::size_t m_block = 0, bool allow_noninvertible = false) {
        if (m_block == 0) m_block = n;
        if (k < 1 || k >= m_block || m_block > n) throw InvalidParameter("need 1 <= k < m_block <= n");
        if (n % m_block != 0) throw InvalidParameter("m_block must divide n");
        if (f.q() <= m_block) throw FieldTooSmall("field too small for the block Vandermonde matrix");
        if (d < 1) throw InvalidParameter("degree budget must be >= 1");
        ExponentPlan plan = select_exponents(m_block, d, f.q(), k, allow_noninvertible);
        RegularMatrix matrix = vandermonde_matrix(f, k, m_block);
        return Construction(f, n, d, std::move(plan), std::move(matrix));
    }

    /// Assembles from explicit parts (manifest loading, handcrafted plans).
    /// Validates the plan and shape; k-regularity of the matrix is the
    /// audit path's job, so a zero minor is accepted here and surfaces
    /// through check_k_regular or a failed sweep.
    static Construction assemble(const Field& f, std::size_t n, std::uint64_t d, ExponentPlan plan,
                                 RegularMatrix matrix) {
        return Construction(f, n, d, std::move(plan), std::move(matrix));
    }

    const Field& field() const { return field_; }
    std::size_t n() const { return n_; }
    std::size_t k() const { return matrix_.k; }
    std::uint64_t d() const { return d_; }
    std::size_t m_block() const { return matrix_.n; }
    std::size_t num_blocks() const { return n_ / matrix_.n; }
    const ExponentPlan& plan() const { return plan_; }
    const RegularMatrix& matrix() const { return matrix_; }
    const std::vector<std::size_t>& free_positions() const { return free_positions_; }

    /// Membership test over the construction field.
    bool contains(std::span<const Elem> x) const {
        if (x.size() != n_) throw InvalidParameter("point arity mismatch");
        const std::size_t m = m_block();
        for (std::size_t b = 0; b < num_blocks(); ++b) {
            if (!base_eval_.block_member(x.subspan(b * m, m))) return false;
        }
        return true;
    }

    /// Number of index digits: (m_block - k) * num_blocks.
    std::size_t index_digits() const { return free_positions_.size() * num_blocks(); }

    /// q^{index_digits}, the exact member count.
    std::uint64_t index_count() const {
        auto c = detail::checked_pow(field_.q(), index_digits());
        if (!c) throw UnsupportedSize("index space exceeds 64 bits");
        return *c;
    }

    /// The explicit map from free coordinates to a member point: per block,
    /// free digits are placed, the k x k solved system is back-substituted,
    /// and each solved coordinate is recovered through the inverse power map
    /// (0 maps to 0).
    std::vector<Elem> point_at(const PointIndex& idx) const {
        require_solver();
        const std::size_t m = m_block(), k = matrix_.k, free_count = m - k;
        if (idx.digits.size() != index_digits()) throw InvalidParameter("index arity mismatch");
        const Field& f = field_;
        std::vector<Elem> x(n_, 0);
        std::vector<Elem> rhs(k), y;
        for (std::size_t b = 0; b < num_blocks(); ++b) {
            const std::size_t base = b * m;
            for (std::size_t i = 0; i < free_count; ++i) {
                const Elem digit = idx.digits[b * free_count + i];
                if (!f.valid(digit)) throw InvalidParameter("index digit out of range");
                x[base + free_positions_[i]] = digit;
            }
            for (std::size_t row = 0; row < k; ++row) {
                Elem acc = 0;
                for (std::size_t i = 0; i < free_count; ++i) {
                    const std::size_t j = free_positions_[i];
                    acc = f.add(acc, f.mul(matrix_.entries.at(row, j), base_eval_.power(j, x[base + j])));
                }
                rhs[row] = f.neg(acc);
            }
            y = mat_vec(f, solved_inverse_, rhs);
            for (std::size_t t = 0; t < k; ++t) {
                x[base + plan_.solved_positions[t]] = f.pow(y[t], inverse_exponents_[t]);
            }
        }
        return x;
    }

    /// Inverse of point_at: extracts the free coordinates of a member.
    PointIndex index_of(std::span<const Elem> x) const {
        if (!contains(x)) throw NotAMember("point fails the defining equations");
        const std::size_t m = m_block(), free_count = free_positions_.size();
        PointIndex idx;
        idx.digits.resize(index_digits());
        for (std::size_t b = 0; b < num_blocks(); ++b) {
            for (std::size_t i = 0; i < free_count; ++i) {
                idx.digits[b * free_count + i] = x[b * m + free_positions_[i]];
            }
        }
        return idx;
    }

    /// Index digits of enumeration ordinal t: base-q, little-endian, digit 0
    /// fastest. Streaming enumeration is point_at(index_from_ordinal(t)) for
    /// t = 0 .. index_count() - 1; disjoint ordinal ranges partition the
    /// stream deterministically.
    PointIndex index_from_ordinal(std::uint64_t t) const {
        PointIndex idx;
        idx.digits.resize(index_digits());
        const std::uint64_t q = field_.q();
        for (std::size_t i = 0; i < idx.digits.size(); ++i) {
            idx.digits[i] = static_cast<Elem>(t % q);
            t /= q;
        }
        if (t != 0) throw InvalidParameter("ordinal beyond index space");
        return idx;
    }

    std::uint64_t ordinal_of_index(const PointIndex& idx) const {
        std::uint64_t t = 0;
        const std::uint64_t q = field_.q();
        for (std::size_t i = idx.digits.size(); i-- > 0;) t = t * q + idx.digits[i];
        return t;
    }

    /// Proven intersection ceiling for adversaries of dimension k and degree
    /// at most d: d * prod(top-k exponents) for one block, and
    /// d^{k+1} * prod^k for the Cartesian product.
    std::uint64_t theoretical_bound() const {
        const std::size_t k = matrix_.k;
        std::uint64_t prod = 1;
        for (std::size_t i = 0; i < k; ++i) {
            auto m = detail::checked_mul(prod, plan_.exponents[i]);
            if (!m) throw UnsupportedSize("intersection bound exceeds 64 bits");
            prod = *m;
        }
        if (num_blocks() == 1) {
            auto r = detail::checked_mul(d_, prod);
            if (!r) throw UnsupportedSize("intersection bound exceeds 64 bits");
            return *r;
        }
        auto dk = detail::checked_pow(d_, k + 1);
        auto pk = detail::checked_pow(prod, k);
        auto r = (dk && pk) ? detail::checked_mul(*dk, *pk) : std::nullopt;
        if (!r) throw UnsupportedSize("intersection bound exceeds 64 bits");
        return *r;
    }

    /// The k * num_blocks defining polynomials as explicit n-variable
    /// polynomials (block b, row i in row-major order).
    std::vector<Polynomial> defining_polynomials() const {
        std::vector<Polynomial> out;
        const std::size_t m = m_block(), k = matrix_.k;
        for (std::size_t b = 0; b < num_blocks(); ++b) {
            for (std::size_t i = 0; i < k; ++i) {
                std::vector<Term> terms;
                for (std::size_t j = 0; j < m; ++j) {
                    Term t;
                    t.exps.assign(n_, 0);
                    t.exps[b * m + j] = static_cast<std::uint32_t>(plan_.exponents[j]);
                    t.coeff = matrix_.entries.at(i, j);
                    terms.push_back(std::move(t));
                }
                out.push_back(Polynomial::from_terms(field_, n_, std::move(terms)));
            }
        }
        return out;
    }

  private:
    Construction(const Field& f, std::size_t n, std::uint64_t d, ExponentPlan plan, RegularMatrix matrix)
        : field_(f), n_(n), d_(d), plan_(std::move(plan)), matrix_(std::move(matrix)) {
        const std::size_t m = matrix_.n, k = matrix_.k;
        if (m == 0 || k < 1 || k >= m) throw InvalidParameter("need 1 <= k < m_block");
        if (n_ == 0 || n_ % m != 0) throw InvalidParameter("m_block must divide n");
        if (plan_.exponents.size() != m) throw InvalidParameter("plan length must equal m_block");
        if (matrix_.entries.rows != k || matrix_.entries.cols != m)
            throw InvalidParameter("matrix shape mismatch");
        for (Elem v : matrix_.entries.a)
            if (!field_.valid(v)) throw InvalidParameter("matrix entry out of range");
        validate_plan(plan_, field_.q(), k);

        std::vector<bool> solved(m, false);
        for (std::size_t pos : plan_.solved_positions) solved[pos] = true;
        for (std::size_t j = 0; j < m; ++j)
            if (!solved[j]) free_positions_.push_back(j);

        base_eval_ = detail::BlockEvaluator(field_, matrix_.entries, plan_.exponents);

        // Factorize the solved-column submatrix once; the indexing map reuses
        // it for every point. A zero minor in a corrupted matrix lands here,
        // so the failure is kept and raised only if the map is used.
        Mat sub(k, k);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) sub.at(r, c) = matrix_.entries.at(r, plan_.solved_positions[c]);
        try {
            solved_inverse_ = invert(field_, sub);
            solver_ok_ = true;
        } catch (const SingularMatrix&) {
            solver_ok_ = false;
        }
        // e_t = d_j^{-1} mod (q - 1) turns y -> y^{e_t} into the inverse of
        // the power map x -> x^{d_j} on all of F_q (0 maps to 0 since e_t >= 1).
        const std::uint64_t group = field_.q() - 1;
        inverse_exponents_.resize(k);
        for (std::size_t t = 0; t < k; ++t) {
            if (group == 1) {
                inverse_exponents_[t] = 1; // F_2: x^d = x for both elements
                continue;
            }
            const std::uint64_t dj = plan_.exponents[plan_.solved_positions[t]] % group;
            inverse_exponents_[t] = inverse_mod(dj, group);
        }
    }

    /// a^{-1} mod m by extended gcd; gcd(a, m) = 1 guaranteed by the plan.
    static std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
        std::int64_t t = 0, newt = 1;
        std::int64_t r = static_cast<std::int64_t>(m), newr = static_cast<std::int64_t>(a % m);
        while (newr != 0) {
            const std::int64_t quot = r / newr;
            std::int64_t tmp = t - quot * newt;
            t = newt;
            newt = tmp;
            tmp = r - quot * newr;
            r = newr;
            newr = tmp;
        }
        if (r != 1) throw InvalidParameter("exponent not invertible modulo q - 1");
        return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
    }

    void require_solver() const {
        if (!solver_ok_) throw SingularMatrix("solved-column submatrix is singular");
    }

    Field field_;
    std::size_t n_ = 0;
    std::uint64_t d_ = 0;
    ExponentPlan plan_;
    RegularMatrix matrix_;
    std::vector<std::size_t> free_positions_;
    std::vector<std::uint64_t> inverse_exponents_;
    Mat solved_inverse_;
    bool solver_ok_ = false;
    detail::BlockEvaluator base_eval_;
};

/// Membership tests over the construction field or a prime-base extension
/// of it (coefficients embed by value). Build once per sweep and share
/// across threads.
class MembershipEvaluator {
  public:
    MembershipEvaluator(const Construction& c, const Field& eval_field)
        : n_(c.n()), m_(c.m_block()) {
        if (eval_field != c.field()) {
            if (c.field().e() != 1 || eval_field.p() != c.field().p())
                throw InvalidParameter("extension evaluation needs a prime construction field");
        }
        eval_ = detail::BlockEvaluator(eval_field, c.matrix().entries, c.plan().exponents);
    }

    const Field& eval_field() const { return eval_.field(); }

    bool operator()(std::span<const Elem> x) const {
        if (x.size() != n_) throw InvalidParameter("point arity mismatch");
        for (std::size_t b = 0; b * m_ < n_; ++b) {
            if (!eval_.block_member(x.subspan(b * m_, m_))) return false;
        }
        return true;
    }

  private:
    std::size_t n_ = 0;
    std::size_t m_ = 0;
    detail::BlockEvaluator eval_;
};

} // namespace evasive

#endif // EVASIVE_CONSTRUCTION_HPP
