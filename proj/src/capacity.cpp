#include "icb/capacity.hpp"

#include <algorithm>
#include <stdexcept>

namespace icb {

CapacityMap::CapacityMap(int n, Rational default_value,
                         std::vector<std::pair<Subset, Rational>> overrides)
    : n_(n), default_(std::move(default_value)), overrides_(std::move(overrides)) {
    if (n < 1 || n > kMaxMessages)
        throw std::invalid_argument("message count must be in [1, 64]");
    if (default_ < 0) throw std::invalid_argument("capacities must be >= 0");
    const Subset full = full_set(n);
    for (auto& [servers, cap] : overrides_) {
        if (servers == 0) throw std::invalid_argument("override for the empty server set");
        if (servers & ~full) throw std::invalid_argument("override server set out of range");
        if (cap < 0) throw std::invalid_argument("capacities must be >= 0");
    }
    std::sort(overrides_.begin(), overrides_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < overrides_.size(); ++i)
        if (overrides_[i - 1].first == overrides_[i].first)
            throw std::invalid_argument("duplicate override for server set " +
                                        subset_to_string(overrides_[i].first));
}

CapacityMap CapacityMap::centralized(int n) {
    return CapacityMap(n, Rational(0), {{full_set(n), Rational(1)}});
}

Rational CapacityMap::capacity(Subset servers) const {
    auto it = std::lower_bound(
        overrides_.begin(), overrides_.end(), servers,
        [](const auto& entry, Subset key) { return entry.first < key; });
    if (it != overrides_.end() && it->first == servers) return it->second;
    return default_;
}

Rational CapacityMap::total_capacity() const {
    mpz_class server_count = (mpz_class(1) << n_) - 1;
    Rational total = default_ * Rational(server_count);
    for (const auto& [servers, cap] : overrides_) total += cap - default_;
    return total;
}

}  // namespace icb
