#ifndef EVASIVE_RNG_HPP
#define EVASIVE_RNG_HPP

#include <cstdint>
#include <random>

#include "field.hpp"

namespace evasive {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace detail

/// Sub-seed for an independent stream derived from a master seed.
/// This mapping is part of the output-stability contract: reports are
/// reproducible from (seed, stream index) alone.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return detail::splitmix64(master + 0x9e3779b97f4a7c15ull * (stream + 1));
}

/// Deterministic PRNG wrapper. mt19937_64 output is fully specified by the
/// standard; bounded draws use rejection sampling, so values are identical
/// on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform draw from [0, bound), unbiased.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw InvalidParameter("empty sampling range");
        const std::uint64_t limit = std::uint64_t(0) - (std::uint64_t(0) - bound) % bound;
        std::uint64_t v = gen_();
        while (limit != 0 && v >= limit) v = gen_();
        return v % bound;
    }

    Elem element(const Field& f) { return static_cast<Elem>(below(f.q())); }

  private:
    std::mt19937_64 gen_;
};

} // namespace evasive

#endif // EVASIVE_RNG_HPP
