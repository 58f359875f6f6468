#ifndef AWTP_RANDOM_HPP
#define AWTP_RANDOM_HPP

#include <cstdint>
#include <random>

namespace awtp {

/// SplitMix64 finalizer, used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/**
 * Seeded randomness source. Output is a function of the seed only: the
 * engine is the standard-mandated mt19937_64 and bounded draws use plain
 * rejection sampling instead of the implementation-defined std distributions.
 */
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be nonzero.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    bool coin() { return (engine_() >> 63) != 0; }

    /// Independent child stream, keyed by an index (trial number, role, ...).
    Rng fork(std::uint64_t stream) const { return Rng(derive_seed(seed_, stream)); }

    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
        return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
    }

   private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace awtp

#endif
