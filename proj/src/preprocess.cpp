#include "dtsolve/preprocess.hpp"

#include <map>
#include <utility>

#include "dtsolve/errors.hpp"

namespace dtsolve {

DedupReport dedup(const ClassificationInstance& instance) {
    std::map<std::pair<std::vector<Value>, Label>, std::size_t> position;
    std::map<std::vector<Value>, std::pair<bool, bool>> labels_seen;
    std::vector<Example> kept;
    std::vector<std::uint64_t> multiplicities;
    for (const auto& e : instance.examples()) {
        auto [it, inserted] = position.try_emplace({e.values, e.label}, kept.size());
        if (inserted) {
            kept.push_back(e);
            multiplicities.push_back(1);
        } else {
            ++multiplicities[it->second];
        }
        auto& seen = labels_seen[e.values];
        (e.label == Label::positive ? seen.first : seen.second) = true;
    }
    std::size_t contradictions = 0;
    for (const auto& [unused, seen] : labels_seen) {
        (void)unused;
        contradictions += seen.first && seen.second;
    }
    return DedupReport{ClassificationInstance(instance.feature_names(), std::move(kept)),
                       std::move(multiplicities), contradictions};
}

BigInt trivial_kernel_bound(std::size_t num_features, std::size_t delta_max,
                            std::size_t d_max) {
    if (delta_max > num_features) {
        throw usage_error("delta_max cannot exceed the number of features");
    }
    BigInt binomial = 1;
    for (std::size_t i = 1; i <= delta_max; ++i) {
        binomial *= static_cast<std::uint64_t>(num_features - i + 1);
        binomial /= static_cast<std::uint64_t>(i);
    }
    BigInt power = 1;
    for (std::size_t i = 0; i < delta_max; ++i) power *= static_cast<std::uint64_t>(d_max);
    return 2 * binomial * power;
}

} // namespace dtsolve
