#include "hsim/chaos.hpp"

#include <map>
#include <mutex>
#include <string>

#include "hsim/errors.hpp"
#include "hsim/farima.hpp"

namespace hsim {

namespace {

// Smallest unused element is either a singleton or paired with a larger one.
void enumerate(std::vector<bool>& used, int d, int m, partition& cur, std::vector<partition>& out) {
    int first = -1;
    for (int i = 0; i < d; ++i)
        if (!used[i]) {
            first = i;
            break;
        }
    if (first < 0) {
        if (static_cast<int>(cur.pairs.size()) == m) out.push_back(cur);
        return;
    }
    int unused = 0;
    for (int i = 0; i < d; ++i) unused += !used[i];
    int pairs_left = m - static_cast<int>(cur.pairs.size());
    used[first] = true;
    if (unused - 1 >= 2 * pairs_left) {
        cur.singletons.push_back(first);
        enumerate(used, d, m, cur, out);
        cur.singletons.pop_back();
    }
    if (pairs_left > 0) {
        for (int j = first + 1; j < d; ++j) {
            if (used[j]) continue;
            used[j] = true;
            cur.pairs.emplace_back(first, j);
            enumerate(used, d, m, cur, out);
            cur.pairs.pop_back();
            used[j] = false;
        }
    }
    used[first] = false;
}

}  // namespace

const std::vector<partition>& partitions(int d, int m) {
    if (d < 1 || d > 12 || m < 0 || 2 * m > d) throw parameter_error("partitions: need 1 <= d <= 12, 0 <= 2m <= d");
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<partition>> memo;
    std::lock_guard lock(mu);
    auto it = memo.find({d, m});
    if (it != memo.end()) return it->second;
    std::vector<partition> out;
    std::vector<bool> used(static_cast<std::size_t>(d), false);
    partition cur;
    enumerate(used, d, m, cur, out);
    return memo.emplace(std::make_pair(d, m), std::move(out)).first->second;
}

std::uint64_t partition_count(int d, int m) {
    if (d < 0 || m < 0 || 2 * m > d) throw parameter_error("partition_count: need 0 <= 2m <= d");
    auto fact = [](int n) {
        std::uint64_t r = 1;
        for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
        return r;
    };
    return fact(d) / (fact(m) * (std::uint64_t{1} << m) * fact(d - 2 * m));
}

covariance_table::covariance_table(std::vector<double> deltas, int max_lag)
    : deltas_(std::move(deltas)), max_lag_(max_lag) {
    if (deltas_.empty() || max_lag_ < 0) throw parameter_error("covariance_table: bad shape");
    const int d = order(), w = 2 * max_lag_ + 1;
    v_.resize(static_cast<std::size_t>(d) * d * w);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int lag = -max_lag_; lag <= max_lag_; ++lag) {
                double c;
                if (b < a)
                    c = (*this)(b, a, -lag);  // filled already
                else
                    c = farima_covariance(deltas_[a], deltas_[b], lag);
                v_[(static_cast<std::size_t>(a) * d + b) * w + (lag + max_lag_)] = c;
            }
}

covariance_table::covariance_table(std::vector<double> deltas, int max_lag, std::vector<double> entries)
    : deltas_(std::move(deltas)), max_lag_(max_lag), v_(std::move(entries)) {
    const std::size_t d = deltas_.size();
    if (d == 0 || max_lag_ < 0 || v_.size() != d * d * (2 * static_cast<std::size_t>(max_lag_) + 1))
        throw parameter_error("covariance_table: entry count does not match shape");
}

double covariance_table::operator()(int a, int b, std::int64_t lag) const {
    const int d = order();
    if (a < 0 || b < 0 || a >= d || b >= d || lag < -max_lag_ || lag > max_lag_)
        throw internal_error("covariance_table: missing entry (" + std::to_string(a) + "," + std::to_string(b) + "," +
                             std::to_string(lag) + ")");
    return v_[(static_cast<std::size_t>(a) * d + b) * (2 * max_lag_ + 1) + static_cast<std::size_t>(lag + max_lag_)];
}

double sigma_general(std::span<const double> z, std::span<const std::int64_t> k, const covariance_table& cov) {
    const int d = static_cast<int>(z.size());
    if (d < 1 || k.size() != z.size() || cov.order() != d)
        throw parameter_error("sigma_general: inconsistent sizes");
    double total = 0.0;
    for (int m = 0; 2 * m <= d; ++m) {
        double part = 0.0;
        for (const auto& p : partitions(d, m)) {
            double t = 1.0;
            for (auto [a, b] : p.pairs) t *= cov(a, b, k[b] - k[a]);
            for (int s : p.singletons) t *= z[s];
            part += t;
        }
        total += (m % 2 ? -part : part);
    }
    return total;
}

}  // namespace hsim
