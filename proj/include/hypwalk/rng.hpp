#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace hypwalk {

/// splitmix64 step; the documented seed-derivation primitive.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Per-trial stream seed: one master seed, splittable by index, so trials
/// are independent and the reduction order never matters.
inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    std::uint64_t a = splitmix64_next(s);
    std::uint64_t b = splitmix64_next(s);
    return a ^ (b << 1);
}

/// Deterministic sampler: mt19937_64 is bit-stable across platforms, and the
/// uniform doubles below avoid implementation-defined std distributions.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : eng_(seed) {}

    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    std::uint64_t raw() { return eng_(); }

    /// Inverse-CDF draw from a categorical distribution.
    std::size_t pick(const std::vector<double>& cdf) {
        double u = uniform01();
        std::size_t lo = 0, hi = cdf.size() - 1;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (u < cdf[mid]) hi = mid;
            else lo = mid + 1;
        }
        return lo;
    }

private:
    std::mt19937_64 eng_;
};

} // namespace hypwalk
