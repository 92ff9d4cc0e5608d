#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace pirsi {

// Seedable generator with a fixed sampling discipline, so identical seeds
// give identical transcripts regardless of the standard library build.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    // Uniform in [0, n).
    uint64_t below(uint64_t n) {
        uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    // Derive an independent stream (partition randomness vs. slot permutations).
    Rng fork() { return Rng(engine_()); }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct elements of v, order randomized.
    template <class T>
    std::vector<T> sample(std::vector<T> v, size_t k) {
        shuffle(v);
        v.resize(k);
        return v;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace pirsi
