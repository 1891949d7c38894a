#ifndef SPECNORM_RNG_HPP
#define SPECNORM_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace specnorm {

// All randomness flows from one root seed; per-module streams are derived
// by hashing a text label into the root with splitmix64 steps.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t root, std::string_view label) {
    std::uint64_t h = root ^ 0xcbf29ce484222325ULL;
    for (char c : label) {
        h ^= (std::uint64_t)(unsigned char)c;
        h *= 0x100000001b3ULL;
        splitmix64(h);
    }
    return splitmix64(h);
}

inline std::mt19937_64 make_rng(std::uint64_t root, std::string_view label) {
    return std::mt19937_64(derive_seed(root, label));
}

}  // namespace specnorm

#endif
