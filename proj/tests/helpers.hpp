#pragma once

#include <cstdint>
#include <vector>

#include "dtsolve/model.hpp"
#include "dtsolve/reductions.hpp"
#include "dtsolve/tree.hpp"

namespace test_helpers {

using namespace dtsolve;

// Deterministic generator kept independent of the library's own mixer.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed * 0x9e3779b97f4a7c15ull + 1) {}

    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }

    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

inline ClassificationInstance xor_instance() {
    return ClassificationInstance(
        {"f1", "f2"},
        {Example{{0, 0}, Label::negative}, Example{{0, 1}, Label::positive},
         Example{{1, 0}, Label::positive}, Example{{1, 1}, Label::negative}});
}

// Root tests f1 at 0; each side tests f2 at 0 with opposite leaf layouts.
inline DecisionTree xor_tree() {
    auto left = DecisionTree::test(1, 0, DecisionTree::leaf(Label::negative),
                                   DecisionTree::leaf(Label::positive));
    auto right = DecisionTree::test(1, 0, DecisionTree::leaf(Label::positive),
                                    DecisionTree::leaf(Label::negative));
    return DecisionTree::test(0, 0, left, right);
}

// Universe {a,b,c} with sets {a,b} and {b,c}; minimum hitting set {b}.
inline SetSystem abc_system(std::size_t k = 1) {
    return SetSystem(3, {{0, 1}, {1, 2}}, k);
}

inline DecisionTree random_tree(const ClassificationInstance& instance, Rng& rng,
                                std::size_t max_depth) {
    if (max_depth == 0 || instance.num_features() == 0 || rng.below(3) == 0) {
        return DecisionTree::leaf(rng.below(2) ? Label::positive : Label::negative);
    }
    const std::size_t f = rng.below(instance.num_features());
    const auto& domain = instance.domain(f);
    Value threshold = 0;
    if (domain.empty()) {
        threshold = static_cast<Value>(rng.below(5)) - 2;
    } else {
        // mostly in-domain thresholds, occasionally one past the ends
        const std::size_t pick = rng.below(domain.size() + 2);
        if (pick < domain.size()) {
            threshold = domain[pick];
        } else if (pick == domain.size()) {
            threshold = domain.front() - 1;
        } else {
            threshold = domain.back() + 1;
        }
    }
    return DecisionTree::test(f, threshold, random_tree(instance, rng, max_depth - 1),
                              random_tree(instance, rng, max_depth - 1));
}

// Indices of the examples reaching each leaf, in leaf visit order.
inline void leaf_partition(const TreeNode& node, const ClassificationInstance& instance,
                           const std::vector<std::size_t>& reachable,
                           std::vector<std::vector<std::size_t>>& out) {
    if (node.is_leaf()) {
        out.push_back(reachable);
        return;
    }
    std::vector<std::size_t> le_set, gt_set;
    for (std::size_t i : reachable) {
        if (instance.example(i).values[node.feature] <= node.threshold) {
            le_set.push_back(i);
        } else {
            gt_set.push_back(i);
        }
    }
    leaf_partition(*node.le, instance, le_set, out);
    leaf_partition(*node.gt, instance, gt_set, out);
}

inline std::vector<std::vector<std::size_t>> leaf_partition(
    const DecisionTree& tree, const ClassificationInstance& instance) {
    std::vector<std::size_t> all(instance.num_examples());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::vector<std::vector<std::size_t>> out;
    leaf_partition(tree.root(), instance, all, out);
    return out;
}

// Subset brute force over all feature subsets: minimal sets with cost <= t
// and size <= k; requires num_features <= 16.
std::vector<std::vector<std::size_t>> brute_minimal_support_sets(
    const ClassificationInstance& instance, std::size_t k, std::uint64_t t);

} // namespace test_helpers
