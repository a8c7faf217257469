#pragma once

#include <span>
#include <vector>

namespace hsim {

// Kernel exponents h_1..h_d with each h in (1/2,1) and sum h > d - 1/2.
class hurst_vector {
public:
    explicit hurst_vector(std::vector<double> h);
    static hurst_vector equal(int d, double H);  // h_l = 1 + (H-1)/d

    int order() const { return static_cast<int>(h_.size()); }
    std::span<const double> h() const { return h_; }
    double operator[](int l) const { return h_[static_cast<std::size_t>(l)]; }
    double delta(int l) const { return h_[static_cast<std::size_t>(l)] - 0.5; }
    // Self-similarity index sum h - d + 1.
    double H() const;
    bool all_equal() const;

private:
    std::vector<double> h_;
};

}  // namespace hsim
