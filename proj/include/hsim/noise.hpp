#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hsim::noise {

// Level-0 blocks hold 2^base_log2 leaves; level L blocks hold 2^(L+base_log2).
inline constexpr int base_log2 = 6;
inline constexpr std::int64_t base_block = std::int64_t{1} << base_log2;
// Highest pyramid level; block sums above it are not defined.
inline constexpr int top_level = 1024;

// i.i.d. N(0,1) white noise g_j indexed by j, together with a consistent
// pyramid of dyadic block sums used for the remote past of FARIMA windows.
class gaussian_field {
public:
    virtual ~gaussian_field() = default;
    // g_j for j in [lo, lo + out.size())
    virtual void leaves(std::int64_t lo, std::span<double> out) const = 0;
    // Sums over blocks lo .. lo + out.size() - 1 at the given level.
    virtual void block_sums(int level, std::int64_t lo, std::span<double> out) const = 0;
    // Deepest level for which block_sums is available.
    virtual int max_level() const { return top_level - 1; }
};

// Noise keyed by (seed, J, index): every value is a pure function of its key.
class keyed_field final : public gaussian_field {
public:
    keyed_field(std::uint64_t seed, int J);
    void leaves(std::int64_t lo, std::span<double> out) const override;
    void block_sums(int level, std::int64_t lo, std::span<double> out) const override;

    std::uint64_t seed() const { return seed_; }
    int scale() const { return J_; }

private:
    double node(int level, std::int64_t index) const;  // caller holds mu_
    double innovation(std::uint64_t stream, std::int64_t a, std::int64_t b) const;

    std::uint64_t seed_;
    int J_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, std::int64_t>, double> memo_;
};

// Noise at scale J-1 derived from a field at scale J through the Meyer
// low-pass filter, so that coarse and fine paths share the same Brownian input.
class coarsened_field final : public gaussian_field {
public:
    explicit coarsened_field(std::shared_ptr<const gaussian_field> fine);
    void leaves(std::int64_t lo, std::span<double> out) const override;
    void block_sums(int level, std::int64_t lo, std::span<double> out) const override;
    int max_level() const override { return fine_->max_level() - 1; }

    static const std::vector<double>& filter();  // taps h_{-K..K}

private:
    std::shared_ptr<const gaussian_field> fine_;
};

// All leaves and block sums are zero (test stub).
class zero_field final : public gaussian_field {
public:
    void leaves(std::int64_t, std::span<double> out) const override;
    void block_sums(int, std::int64_t, std::span<double> out) const override;
};

// Field for scale J coupled to a keyed field at scale J_fine >= J.
std::shared_ptr<const gaussian_field> make_field(std::uint64_t seed, int J, int J_fine);

}  // namespace hsim::noise
