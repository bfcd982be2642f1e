#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "dtsolve/model.hpp"

namespace dtsolve {

using BigInt = boost::multiprecision::cpp_int;

struct DedupReport {
    /// Distinct (values, label) pairs in first-occurrence order.
    ClassificationInstance kept;
    /// Occurrence count per kept example; sums to the original size.
    std::vector<std::uint64_t> multiplicities;
    /// Number of distinct value vectors carrying both labels.
    std::size_t contradictions = 0;
};

DedupReport dedup(const ClassificationInstance& instance);

/// Upper bound 2 * C(num_features, delta_max) * d_max^delta_max on the number
/// of distinct examples an instance with these parameters can contain (both
/// classes nonempty). Exact arbitrary-precision arithmetic.
BigInt trivial_kernel_bound(std::size_t num_features, std::size_t delta_max,
                            std::size_t d_max);

} // namespace dtsolve
