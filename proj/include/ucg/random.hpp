#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ucg {

// Reproducible across standard libraries: std::mt19937_64 output is fixed by the
// standard, and bounded draws use plain rejection sampling on top of it (the
// std distributions are implementation-defined, so they are avoided).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // uniform in [0, bound), bound > 0
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do x = engine_();
        while (x >= limit);
        return x % bound;
    }

    int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

    // uniform in [0,1) with 53 bits
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return unit() < p; }

    // first `count` entries of v become a uniform random sample (partial Fisher-Yates)
    template <class T>
    void partial_shuffle(std::vector<T>& v, std::size_t count) {
        for (std::size_t i = 0; i < count && i + 1 < v.size(); ++i) {
            std::size_t j = i + static_cast<std::size_t>(below(v.size() - i));
            std::swap(v[i], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace ucg
