#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace scambait {

// SplitMix64 (Steele, Lea & Flood; the java.util.SplittableRandom mixer).
// Chosen over std::mt19937_64 + <random> distributions because distribution
// output is implementation-defined; golden-transcript tests need bit-stable
// sequences across compilers.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [0, bound) via rejection sampling.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    double unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Derive an independent child stream.
    SplitMix64 split() { return SplitMix64(next() ^ 0x6A09E667F3BCC909ULL); }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            using std::swap;
            swap(items[i - 1], items[j]);
        }
    }

private:
    std::uint64_t state_;
};

// FNV-1a, used to key deterministic mock output and per-reply seeds.
inline std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return SplitMix64(a ^ (b + 0x9E3779B97F4A7C15ULL)).next();
}

} // namespace scambait
