#include "helpers.hpp"

#include <algorithm>
#include <bit>

#include "dtsolve/support_sets.hpp"

namespace test_helpers {

std::vector<std::vector<std::size_t>> brute_minimal_support_sets(
    const ClassificationInstance& instance, std::size_t k, std::uint64_t t) {
    const std::size_t f = instance.num_features();
    std::vector<std::uint32_t> good;  // subsets with |S| <= k and cost <= t
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << f); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) > k) continue;
        std::vector<std::size_t> features;
        for (std::size_t j = 0; j < f; ++j) {
            if ((mask >> j) & 1) features.push_back(j);
        }
        if (outlier_cost(features, instance) <= t) good.push_back(mask);
    }
    std::vector<std::vector<std::size_t>> family;
    for (std::uint32_t mask : good) {
        bool minimal = true;
        for (std::uint32_t other : good) {
            if (other != mask && (other & mask) == other) {
                minimal = false;
                break;
            }
        }
        if (!minimal) continue;
        std::vector<std::size_t> features;
        for (std::size_t j = 0; j < f; ++j) {
            if ((mask >> j) & 1) features.push_back(j);
        }
        family.push_back(std::move(features));
    }
    std::sort(family.begin(), family.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return family;
}

} // namespace test_helpers
