#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dtsolve/model.hpp"
#include "dtsolve/solver.hpp"

namespace dtsolve {

/// Simple undirected graph on vertices 0..n-1. Construction rejects
/// self-loops, out-of-range endpoints and duplicate edges; edge order is
/// preserved (the instance generators depend on it).
struct Graph {
    Graph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges);

    std::size_t n = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    std::size_t m() const { return edges.size(); }
};

/// A family of nonempty subsets of 0..universe_size-1 plus a solution bound.
struct SetSystem {
    SetSystem(std::size_t universe_size, std::vector<std::vector<std::size_t>> sets,
              std::size_t k);

    std::size_t universe_size = 0;
    std::vector<std::vector<std::size_t>> sets;  // each sorted, deduplicated
    std::size_t k = 0;
};

/// Hitting-set instance as a classification task: one boolean feature per
/// universe element ("u<i>"), an all-zero positive, and one negative per set
/// with ones on its elements.
ClassificationInstance hs_to_ci(const SetSystem& system);

/// Same construction with every label flipped.
ClassificationInstance hs_to_ci_complement(const SetSystem& system);

/// Set-cover instance as a classification task: one boolean feature per set
/// ("X<i>"), an all-zero positive, and one negative per universe element
/// with ones on the sets containing it.
ClassificationInstance sc_to_ci(const SetSystem& system);

struct BlockRange {
    std::size_t begin = 0;  // example index, inclusive
    std::size_t end = 0;    // exclusive
};

/// Output of the partial-vertex-cover instance generator.
struct PvcReduction {
    ClassificationInstance instance;
    std::size_t s = 0;
    std::size_t d = 0;
    std::uint64_t t = 0;
    std::size_t eta = 0;  // number of copies
    std::size_t ell = 0;  // m - p
    std::vector<BlockRange> blocks;
    /// Per vertex feature, the example indices of the edge examples it hits.
    std::vector<std::vector<std::size_t>> hit_map;
};

/// Encodes "G has <= k vertices hitting >= p edges" as a tree-learning
/// instance over features v0..v{n-1} plus a running counter d0. Per copy i
/// and edge j it emits a negative example (endpoints 1, d0 = 2m(i-1)+2j-1)
/// followed by an all-zero positive (d0 = 2m(i-1)+2j). The number of copies
/// is k(ell+2) for the size objective and 2^k(ell+2) for depth; the budgets
/// are s = d = k and t = ell * eta.
PvcReduction pvc_to_dt_instance(const Graph& graph, std::size_t k, std::size_t p,
                                Objective objective);

struct AndComposition {
    ClassificationInstance instance;
    std::size_t depth_budget = 0;  // log2(N) + k + 1
    std::size_t num_blocks = 0;    // 2N after padding
};

/// Combines N vertex-cover instances (shared vertex count, shared k) into a
/// single depth-budget instance that is feasible iff every input has a
/// vertex cover of size <= k. Inputs are padded to a power of two with
/// known-yes split graphs; those also fill the odd blocks (complemented).
AndComposition and_composition(const std::vector<Graph>& graphs, std::size_t k);

/// Split graph on n vertices with minimum vertex cover exactly k (verified
/// at construction). Used as the known-yes filler of and_composition.
Graph split_graph(std::size_t n, std::size_t k);

/// Exhaustive reference deciders for the source problems. Inputs are capped
/// at 20 vertices / elements / sets.
bool brute_pvc(const Graph& graph, std::size_t k, std::size_t p);
bool brute_vc(const Graph& graph, std::size_t k);
bool brute_hs(const SetSystem& system);
bool brute_sc(const SetSystem& system);

/// Seeded random instance over features f1..f{num_features}; values are
/// uniform in [0, dmax) and labels are fair coin flips. The generator is its
/// own fixed-width mixer, so output is identical across platforms.
ClassificationInstance random_instance(std::uint64_t seed, std::size_t num_features,
                                       std::size_t num_examples, std::size_t dmax);

} // namespace dtsolve
