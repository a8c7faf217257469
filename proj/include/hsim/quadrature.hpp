#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hsim/hurst.hpp"

namespace hsim {

// Composite Gauss-Legendre: `panels` equal panels per axis over
// [-4pi/3, 4pi/3], `order` nodes each (16, 32 or 64).
struct quadrature_meta {
    int order = 32;
    int panels = 64;
    quadrature_meta refined() const { return {order, 2 * panels}; }
};

enum class table_kind { d2, d3, gen3 };

const char* to_string(table_kind k);

// Fourier-domain integrals of products of fractional scaling functions.
//   d2:   V(k)   = int e^{i xi k} s(xi)^H phi_hat(xi)^2,                 k = 0..kmax
//   d3:   M(k,l) = iint e^{i(xi k + eta l)} F(xi, eta),                   k, l = 0..kmax
//   gen3: M(k,l) with phases xi (k + (h2-h1)/2) + eta (l + (h3-h2)/2),  k, l = -kmax..kmax
// where F = phi_hat(xi) phi_hat(xi-eta) phi_hat(eta)
//           s(xi)^{h1-1/2} s(xi-eta)^{h2-1/2} s(eta)^{h3-1/2}, s = sin(x/2)/(x/2).
// The L2 pairing of the d scaling functions is the table value / (2 pi)^{d-1}.
struct integral_table {
    table_kind kind = table_kind::d2;
    int kmax = 0;
    std::vector<double> params;  // H, or (h1, h2, h3)
    quadrature_meta meta;
    std::vector<double> values;
    double max_imag = 0.0;  // largest discarded imaginary part

    int dimension() const { return kind == table_kind::d2 ? 1 : 2; }
    double at(int k) const;
    double at(int k, int l) const;
    std::string cache_key() const;
};

integral_table integral_vector_d2(double H, int kmax, const quadrature_meta& meta = {});
// d2 variant with an arbitrary exponent on the sinc factor (exponent 0 gives
// int |phi_hat|^2 = 2 pi at k = 0).
integral_table integral_vector_d2_exponent(double exponent, int kmax, const quadrature_meta& meta = {});
integral_table integral_matrix_d3(double H, int kmax, const quadrature_meta& meta = {});
integral_table integral_matrix_gen3(const hurst_vector& h, int kmax, const quadrature_meta& meta = {});

// Composite rule nodes and weights on [lo, hi].
void composite_rule(double lo, double hi, const quadrature_meta& meta, std::vector<double>& x,
                    std::vector<double>& w);

// On-disk cache: one JSON file per table, named by a hash of the key.
class table_cache {
public:
    explicit table_cache(std::filesystem::path dir);
    // Directory from HERMITE_SIM_CACHE if set.
    static std::optional<std::filesystem::path> env_dir();

    const std::filesystem::path& dir() const { return dir_; }
    std::filesystem::path file_for(const std::string& key) const;
    std::optional<integral_table> load(const std::string& key) const;
    void store(const integral_table& t) const;

private:
    std::filesystem::path dir_;
};

// Cached construction when a cache is given.
integral_table get_table(table_kind kind, const std::vector<double>& params, int kmax, const quadrature_meta& meta,
                         const table_cache* cache = nullptr);

}  // namespace hsim
