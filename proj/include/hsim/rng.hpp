#pragma once

#include <cstdint>

namespace hsim::rng {

// splitmix64 finalizer; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x);

// Hash of a tuple of 64-bit words, order sensitive.
std::uint64_t key(std::uint64_t seed, std::uint64_t stream, std::uint64_t a, std::uint64_t b);

// Uniform in (0,1) from a key; never returns 0 or 1.
double uniform(std::uint64_t k);

// Standard normal from a key (Box-Muller on two derived uniforms).
double normal(std::uint64_t k);

// Seed of the i-th path derived from a master seed.
std::uint64_t path_seed(std::uint64_t master, std::uint64_t i);

}  // namespace hsim::rng
