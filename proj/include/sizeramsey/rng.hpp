#ifndef SIZERAMSEY_RNG_HPP
#define SIZERAMSEY_RNG_HPP

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace sizeramsey {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derive an independent stream seed from a base seed and a label.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label) {
    return splitmix64(splitmix64(seed) ^ splitmix64(label + 0x632be59bd9b4e019ULL));
}

// Seeded generator whose outputs are identical on every platform.
// std::mt19937_64 is fully specified; the distributions below are written out
// because the standard library ones are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next() { return engine_(); }

    // Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return p >= 1.0 || unit() < p; }

    template <class T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

// Counter-based draw: the value depends only on (seed, stream, counter), so
// resampling one variable never perturbs the draws of another.
inline std::uint64_t counter_draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
                                  std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t attempt = 0;
    for (;;) {
        std::uint64_t x = splitmix64(derive_seed(seed, stream) ^ splitmix64(counter * 0x100000001b3ULL + attempt));
        if (x < limit) return x % bound;
        ++attempt;
    }
}

}  // namespace sizeramsey

#endif  // SIZERAMSEY_RNG_HPP
