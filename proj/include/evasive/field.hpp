#ifndef EVASIVE_FIELD_HPP
#define EVASIVE_FIELD_HPP

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "common.hpp"
#include "errors.hpp"

namespace evasive {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

/// Deterministic Miller-Rabin; bases {2, 7, 61} decide primality below 2^32.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 7ull, 61ull}) {
        if (a % n == 0) continue;
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// --- dense univariate polynomials over F_p, used only for modulus search ---

using PolyFp = std::vector<std::uint32_t>; // coefficients, ascending degree

inline void poly_trim(PolyFp& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PolyFp poly_mulmod(const PolyFp& a, const PolyFp& b, const PolyFp& mod, std::uint32_t p) {
    // mod is monic of degree e; result reduced to degree < e
    const std::size_t e = mod.size() - 1;
    std::vector<std::uint64_t> t(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            t[i + j] = (t[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
        }
    }
    for (std::size_t i = t.size(); i-- > e;) {
        const std::uint64_t c = t[i] % p;
        if (c == 0) continue;
        t[i] = 0;
        for (std::size_t j = 0; j < e; ++j) {
            t[i - e + j] = (t[i - e + j] + (p - static_cast<std::uint32_t>(c)) * static_cast<std::uint64_t>(mod[j])) % p;
        }
    }
    PolyFp r(e, 0);
    for (std::size_t j = 0; j < e && j < t.size(); ++j) r[j] = static_cast<std::uint32_t>(t[j]);
    poly_trim(r);
    return r;
}

inline PolyFp poly_powmod(PolyFp base, std::uint64_t exp, const PolyFp& mod, std::uint32_t p) {
    PolyFp r{1};
    while (exp) {
        if (exp & 1) r = poly_mulmod(r, base, mod, p);
        exp >>= 1;
        if (exp) base = poly_mulmod(base, base, mod, p);
    }
    return r;
}

inline std::uint32_t inv_mod_prime(std::uint32_t a, std::uint32_t p) {
    // extended gcd on (a, p); a nonzero mod p
    std::int64_t t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

inline PolyFp poly_gcd(PolyFp a, PolyFp b, std::uint32_t p) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        // a mod b
        const std::uint32_t lead_inv = inv_mod_prime(b.back(), p);
        while (a.size() >= b.size()) {
            const std::uint64_t f = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
            if (f != 0) {
                const std::size_t off = a.size() - b.size();
                for (std::size_t j = 0; j < b.size(); ++j) {
                    a[off + j] = static_cast<std::uint32_t>(
                        (a[off + j] + (p - static_cast<std::uint32_t>(f * b[j] % p))) % p);
                }
            }
            poly_trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

/// Irreducibility over F_p: root search for degree <= 3, otherwise
/// gcd(f, x^{p^i} - x) = 1 for all 1 <= i <= deg/2.
inline bool poly_irreducible(const PolyFp& f, std::uint32_t p) {
    const std::size_t deg = f.size() - 1;
    if (deg == 0) return false;
    if (deg == 1) return true;
    if (deg <= 3) {
        for (std::uint32_t x = 0; x < p; ++x) {
            std::uint64_t acc = 0;
            for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
            if (acc == 0) return false;
        }
        return true;
    }
    PolyFp frob{0, 1}; // x
    for (std::size_t i = 1; i <= deg / 2; ++i) {
        frob = poly_powmod(frob, p, f, p);
        PolyFp diff = frob;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = static_cast<std::uint32_t>((diff[1] + p - 1) % p); // subtract x
        poly_trim(diff);
        PolyFp g = poly_gcd(f, diff, p);
        if (g.size() != 1) return false;
    }
    return true;
}

} // namespace detail

/// Description of F_q with q = p^e, plus all element arithmetic.
///
/// Immutable after construction and safe to share across threads; every
/// operation is a pure function of its inputs. Elements are canonical
/// integers in [0, q); see Elem.
class Field {
  public:
    /// Hard cap on supported field size.
    static constexpr std::uint64_t kMaxQ = std::uint64_t(1) << 31;

    /// F_{p^e}. For e > 1 the modulus polynomial is the monic irreducible of
    /// degree e over F_p with the smallest encoded coefficient vector.
    explicit Field(std::uint32_t p, std::uint32_t e = 1) : p_(p), e_(e) {
        validate_shape();
        if (e_ > 1) {
            modulus_ = smallest_irreducible();
        }
    }

    /// F_{p^e} with an explicit monic irreducible modulus (ascending
    /// coefficients, length e + 1). Used when rebuilding from a manifest.
    Field(std::uint32_t p, std::uint32_t e, std::vector<Elem> modulus)
        : p_(p), e_(e), modulus_(std::move(modulus)) {
        validate_shape();
        if (e_ == 1) {
            if (!modulus_.empty()) throw InvalidParameter("prime field takes no modulus polynomial");
            return;
        }
        if (modulus_.size() != e_ + 1 || modulus_.back() != 1)
            throw InvalidParameter("modulus polynomial must be monic of degree e");
        for (Elem c : modulus_)
            if (c >= p_) throw InvalidParameter("modulus coefficient out of range");
        detail::PolyFp f(modulus_.begin(), modulus_.end());
        if (!detail::poly_irreducible(f, p_)) throw InvalidParameter("modulus polynomial is reducible");
    }

    std::uint32_t p() const { return p_; }
    std::uint32_t e() const { return e_; }
    std::uint32_t q() const { return q_; }

    /// Monic modulus coefficients (ascending, length e + 1); empty for e = 1.
    const std::vector<Elem>& modulus() const { return modulus_; }

    bool valid(Elem a) const { return a < q_; }

    Elem add(Elem a, Elem b) const {
        if (e_ == 1) {
            Elem s = a + b; // q <= 2^31, no overflow in u32
            return s >= q_ ? s - q_ : s;
        }
        Elem r = 0, mult = 1;
        for (std::uint32_t i = 0; i < e_; ++i) {
            Elem da = a % p_, db = b % p_;
            a /= p_;
            b /= p_;
            Elem s = da + db;
            if (s >= p_) s -= p_;
            r += s * mult;
            mult *= p_;
        }
        return r;
    }

    Elem neg(Elem a) const {
        if (e_ == 1) return a == 0 ? 0 : q_ - a;
        Elem r = 0, mult = 1;
        for (std::uint32_t i = 0; i < e_; ++i) {
            Elem d = a % p_;
            a /= p_;
            r += (d == 0 ? 0 : p_ - d) * mult;
            mult *= p_;
        }
        return r;
    }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const {
        if (e_ == 1) {
            return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % q_);
        }
        return mul_ext(a, b);
    }

    /// a^{-1}; extended gcd for prime fields, a^{q-2} for extensions.
    Elem inv(Elem a) const {
        if (a == 0) throw DivisionByZero("inverse of zero");
        if (e_ == 1) return detail::inv_mod_prime(a, p_);
        return pow(a, q_ - 2);
    }

    /// a^n by square-and-multiply; 0^0 = 1.
    Elem pow(Elem a, std::uint64_t n) const {
        Elem r = 1;
        while (n) {
            if (n & 1) r = mul(r, a);
            n >>= 1;
            if (n) a = mul(a, a);
        }
        return r;
    }

    /// All q elements in increasing encoded order.
    std::vector<Elem> elements() const {
        if (q_ > (1u << 26)) throw UnsupportedSize("field too large to enumerate");
        std::vector<Elem> out(q_);
        for (Elem v = 0; v < q_; ++v) out[v] = v;
        return out;
    }

    /// Base-p digits of an element, least significant first, length e.
    std::vector<Elem> digits(Elem a) const {
        std::vector<Elem> d(e_);
        for (std::uint32_t i = 0; i < e_; ++i) {
            d[i] = a % p_;
            a /= p_;
        }
        return d;
    }

    Elem from_digits(const std::vector<Elem>& d) const {
        Elem r = 0, mult = 1;
        for (std::uint32_t i = 0; i < e_; ++i) {
            Elem di = i < d.size() ? d[i] : 0;
            if (di >= p_) throw InvalidParameter("digit out of range");
            r += di * mult;
            mult *= p_;
        }
        return r;
    }

    bool operator==(const Field& o) const { return p_ == o.p_ && e_ == o.e_ && modulus_ == o.modulus_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

  private:
    std::uint32_t p_ = 0;
    std::uint32_t e_ = 0;
    std::uint32_t q_ = 0;
    std::vector<Elem> modulus_;

    void validate_shape() {
        if (!detail::is_prime_u64(p_)) throw NonPrimeModulus("p = " + std::to_string(p_) + " is not prime");
        if (e_ < 1) throw InvalidParameter("extension degree must be >= 1");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < e_; ++i) {
            q *= p_;
            if (q > kMaxQ) throw UnsupportedSize("p^e exceeds 2^31");
        }
        q_ = static_cast<std::uint32_t>(q);
    }

    std::vector<Elem> smallest_irreducible() const {
        // monic x^e + c_{e-1} x^{e-1} + ... + c_0, searched by increasing
        // encoded value of (c_0, ..., c_{e-1})
        const std::uint64_t count = q_; // p^e encodings
        detail::PolyFp f(e_ + 1, 0);
        f[e_] = 1;
        for (std::uint64_t enc = 0; enc < count; ++enc) {
            std::uint64_t v = enc;
            for (std::uint32_t i = 0; i < e_; ++i) {
                f[i] = static_cast<std::uint32_t>(v % p_);
                v /= p_;
            }
            if (detail::poly_irreducible(f, p_)) {
                return std::vector<Elem>(f.begin(), f.end());
            }
        }
        throw Error("no irreducible polynomial found"); // unreachable
    }

    Elem mul_ext(Elem a, Elem b) const {
        std::uint32_t da[32], db[32];
        for (std::uint32_t i = 0; i < e_; ++i) {
            da[i] = a % p_;
            a /= p_;
            db[i] = b % p_;
            b /= p_;
        }
        std::uint64_t t[63] = {0};
        for (std::uint32_t i = 0; i < e_; ++i) {
            if (da[i] == 0) continue;
            for (std::uint32_t j = 0; j < e_; ++j) {
                t[i + j] += static_cast<std::uint64_t>(da[i]) * db[j];
            }
        }
        const std::uint32_t top = 2 * e_ - 1;
        for (std::uint32_t i = top; i-- > e_;) {
            const std::uint64_t c = t[i] % p_;
            t[i] = 0;
            if (c == 0) continue;
            for (std::uint32_t j = 0; j < e_; ++j) {
                t[i - e_ + j] += (p_ - static_cast<std::uint32_t>(c)) * static_cast<std::uint64_t>(modulus_[j]);
            }
        }
        Elem r = 0, mult = 1;
        for (std::uint32_t i = 0; i < e_; ++i) {
            r += static_cast<Elem>(t[i] % p_) * mult;
            mult *= p_;
        }
        return r;
    }
};

} // namespace evasive

#endif // EVASIVE_FIELD_HPP
