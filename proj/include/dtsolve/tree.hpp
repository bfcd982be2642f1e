#pragma once

#include <memory>
#include <vector>

#include "dtsolve/model.hpp"

namespace dtsolve {

struct TreeNode;
using NodePtr = std::shared_ptr<const TreeNode>;

/// Immutable tree node. A node is a leaf iff it has no children; test nodes
/// always have both. Subtrees are shared freely between trees.
struct TreeNode {
    std::size_t feature = 0;
    Value threshold = 0;
    NodePtr le;  // taken when e(feature) <= threshold
    NodePtr gt;
    Label leaf_label = Label::negative;

    bool is_leaf() const { return le == nullptr; }
};

/// Binary threshold tree: each test routes e left iff e(f) <= threshold,
/// right otherwise; leaves carry the predicted label.
class DecisionTree {
public:
    static DecisionTree leaf(Label label);
    static DecisionTree test(std::size_t feature, Value threshold,
                             const DecisionTree& le, const DecisionTree& gt);
    explicit DecisionTree(NodePtr root);

    const TreeNode& root() const { return *root_; }
    const NodePtr& root_ptr() const { return root_; }

    bool operator==(const DecisionTree& other) const;

private:
    NodePtr root_;
};

/// Number of test nodes; a single leaf has size 0.
std::size_t tree_size(const DecisionTree& tree);

/// Maximum number of test nodes on any root-to-leaf path.
std::size_t tree_depth(const DecisionTree& tree);

/// Routes e from the root to a leaf; ties (e(f) == threshold) go left.
Label classify(const DecisionTree& tree, const Example& e);

/// Indices of the examples whose leaf label differs from their own, ascending.
std::vector<std::size_t> outliers(const DecisionTree& tree,
                                  const ClassificationInstance& instance);

/// Collapses subtrees whose reachable example set is uniform (or empty) into
/// leaves and splices out tests with an empty side. Never increases size,
/// depth, or the number of outliers.
DecisionTree normalize(const DecisionTree& tree, const ClassificationInstance& instance);

} // namespace dtsolve
