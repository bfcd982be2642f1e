#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dtsolve/model.hpp"
#include "dtsolve/tree.hpp"

namespace dtsolve {

enum class Objective : std::uint8_t { size, depth };

inline const char* objective_name(Objective o) {
    return o == Objective::size ? "size" : "depth";
}
std::optional<Objective> objective_from_name(std::string_view name);

/// Structural bound k (tree size or depth, per objective) plus the number of
/// examples the tree may misclassify.
struct Budget {
    Objective objective = Objective::size;
    std::size_t k = 0;
    std::uint64_t t = 0;

    bool operator==(const Budget&) const = default;
};

struct SolveResult {
    bool feasible = false;
    std::optional<DecisionTree> tree;
    std::size_t achieved_size = 0;
    std::size_t achieved_depth = 0;
    std::uint64_t achieved_outliers = 0;
    std::uint64_t nodes_explored = 0;
};

struct SolveOptions {
    int threads = 1;
    std::uint64_t node_cap = 100'000'000;
    /// Per-example multiplicities (>= 1). Outliers count weighted when set.
    std::optional<std::vector<std::uint64_t>> weights;
};

/// Decides whether a tree within `budget` exists and returns a witness when
/// one does. The witness is normalized and deterministic: candidate splits
/// are scanned by ascending (feature, threshold, left-size-share) and only
/// strict improvements are kept, so ties resolve to the lexicographically
/// first optimum. Throws resource_limit_error past options.node_cap.
SolveResult solve(const ClassificationInstance& instance, const Budget& budget,
                  const SolveOptions& options = {});

/// Smallest k for which solve(instance, {objective,k,t}) is feasible.
/// Throws usage_error when no budget can reach t outliers (contradictory
/// duplicates force a floor on the error count).
std::size_t min_cost(const ClassificationInstance& instance, Objective objective,
                     std::uint64_t t, const SolveOptions& options = {});

/// Exhaustive reference search: recurses over every split structure within
/// the structural budget with no memoization and no pruning. Test-scale
/// only; throws resource_limit_error ("oracle too large") past node_cap.
SolveResult oracle_solve(const ClassificationInstance& instance, const Budget& budget,
                         std::uint64_t node_cap = 2'000'000'000);

/// Minimum outlier count over all trees within the structural budget,
/// computed by the same exhaustive recursion as oracle_solve.
std::uint64_t oracle_min_outliers(const ClassificationInstance& instance,
                                  Objective objective, std::size_t k,
                                  std::uint64_t node_cap = 2'000'000'000);

/// Necessary condition for feasibility: a tree of size s (depth d) with at
/// most t outliers uses a feature set S with |S| <= s (resp. 2^d - 1) whose
/// agreement-class cost is at most t. Returns false only when no such S
/// exists; true is non-committal.
bool support_feasibility(const ClassificationInstance& instance, std::size_t k,
                         std::uint64_t t, Objective objective);

} // namespace dtsolve
