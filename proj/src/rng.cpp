#include "hsim/rng.hpp"

#include <cmath>

namespace hsim::rng {

namespace {
constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
constexpr double two_pi = 6.283185307179586476925286766559;
}  // namespace

std::uint64_t mix64(std::uint64_t x) {
    x += golden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t key(std::uint64_t seed, std::uint64_t stream, std::uint64_t a, std::uint64_t b) {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ stream);
    h = mix64(h ^ a);
    h = mix64(h ^ b);
    return h;
}

double uniform(std::uint64_t k) {
    // 53 random bits, shifted off zero by half an ulp of the grid
    return (static_cast<double>(k >> 11) + 0.5) * 0x1.0p-53;
}

double normal(std::uint64_t k) {
    double u1 = uniform(mix64(k ^ 0x243F6A8885A308D3ULL));
    double u2 = uniform(mix64(k ^ 0x13198A2E03707344ULL));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

std::uint64_t path_seed(std::uint64_t master, std::uint64_t i) {
    return mix64(master ^ mix64(i + 1));
}

}  // namespace hsim::rng
