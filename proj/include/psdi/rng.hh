#pragma once

#include <cstdint>
#include <random>

namespace psdi {

// std::mt19937_64 output is fixed by the standard, the distributions are
// not; bounded draws are done here so seeds reproduce across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    /// Uniform in [0, bound), bound > 0, by rejection.
    std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % bound);
        for (;;) {
            auto x = engine_();
            if (x < limit)
                return x % bound;
        }
    }

    int range(int lo, int hi) { return lo + int(below(std::uint64_t(hi - lo + 1))); }

    bool coin() { return engine_() >> 63; }

    /// Uniform in [0, 1).
    double unit() { return double(engine_() >> 11) * 0x1.0p-53; }

    template <class It>
    void shuffle(It first, It last)
    {
        auto n = last - first;
        for (auto i = n - 1; i > 0; --i) {
            auto j = below(std::uint64_t(i + 1));
            std::swap(first[i], first[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace psdi
