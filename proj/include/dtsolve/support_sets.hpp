#pragma once

#include <cstdint>
#include <vector>

#include "dtsolve/model.hpp"

namespace dtsolve {

/// A feature subset together with its agreement-class outlier cost.
struct SupportSetReport {
    std::vector<std::size_t> features;  // sorted ascending
    std::uint64_t outlier_cost = 0;
    /// True when dropping any single feature pushes the cost above the
    /// queried t (equivalently, no proper subset stays within t).
    bool minimal = false;

    bool operator==(const SupportSetReport&) const = default;
};

/// Partition the examples into classes agreeing on every feature of S and
/// sum min(#positives, #negatives) per class. 0 iff S is a support set.
std::uint64_t outlier_cost(const std::vector<std::size_t>& features,
                           const ClassificationInstance& instance);

/// True iff every positive/negative pair disagrees on some feature of S.
bool is_support_set(const std::vector<std::size_t>& features,
                    const ClassificationInstance& instance);

/// Counters filled by the enumeration routines (for bound checks).
struct EnumStats {
    std::uint64_t branch_nodes = 0;
    std::uint64_t leaves = 0;
};

/// All inclusion-minimal support sets of size at most k, deduplicated, each
/// sorted, the family ordered by (size, lexicographic).
std::vector<std::vector<std::size_t>> enum_minimal_support_sets(
    const ClassificationInstance& instance, std::size_t k, EnumStats* stats = nullptr);

/// All inclusion-minimal feature sets of size at most k whose outlier cost is
/// at most t. Branches on the disagreement features of an uncharged
/// undistinguished pair plus two charging branches; raw reports are
/// deduplicated and filtered to minimal sets.
std::vector<SupportSetReport> enum_minimal_support_sets_outliers(
    const ClassificationInstance& instance, std::size_t k, std::uint64_t t,
    EnumStats* stats = nullptr);

} // namespace dtsolve
