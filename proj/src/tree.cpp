#include "dtsolve/tree.hpp"

#include <algorithm>

#include "dtsolve/errors.hpp"

namespace dtsolve {

namespace {

NodePtr make_leaf(Label label) {
    auto node = std::make_shared<TreeNode>();
    node->leaf_label = label;
    return node;
}

NodePtr make_test(std::size_t feature, Value threshold, NodePtr le, NodePtr gt) {
    if (!le || !gt) throw usage_error("test node requires both children");
    auto node = std::make_shared<TreeNode>();
    node->feature = feature;
    node->threshold = threshold;
    node->le = std::move(le);
    node->gt = std::move(gt);
    return node;
}

std::size_t size_of(const TreeNode& n) {
    if (n.is_leaf()) return 0;
    return 1 + size_of(*n.le) + size_of(*n.gt);
}

std::size_t depth_of(const TreeNode& n) {
    if (n.is_leaf()) return 0;
    return 1 + std::max(depth_of(*n.le), depth_of(*n.gt));
}

bool equal(const TreeNode& a, const TreeNode& b) {
    if (a.is_leaf() != b.is_leaf()) return false;
    if (a.is_leaf()) return a.leaf_label == b.leaf_label;
    return a.feature == b.feature && a.threshold == b.threshold && equal(*a.le, *b.le) &&
           equal(*a.gt, *b.gt);
}

} // namespace

DecisionTree DecisionTree::leaf(Label label) { return DecisionTree(make_leaf(label)); }

DecisionTree DecisionTree::test(std::size_t feature, Value threshold, const DecisionTree& le,
                                const DecisionTree& gt) {
    return DecisionTree(make_test(feature, threshold, le.root_, gt.root_));
}

DecisionTree::DecisionTree(NodePtr root) : root_(std::move(root)) {
    if (!root_) throw usage_error("decision tree requires a root");
}

bool DecisionTree::operator==(const DecisionTree& other) const {
    return equal(*root_, *other.root_);
}

std::size_t tree_size(const DecisionTree& tree) { return size_of(tree.root()); }

std::size_t tree_depth(const DecisionTree& tree) { return depth_of(tree.root()); }

Label classify(const DecisionTree& tree, const Example& e) {
    const TreeNode* node = &tree.root();
    while (!node->is_leaf()) {
        if (node->feature >= e.values.size()) {
            throw usage_error("tree tests feature index out of range for example");
        }
        node = e.values[node->feature] <= node->threshold ? node->le.get() : node->gt.get();
    }
    return node->leaf_label;
}

std::vector<std::size_t> outliers(const DecisionTree& tree,
                                  const ClassificationInstance& instance) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < instance.num_examples(); ++i) {
        const auto& e = instance.example(i);
        if (classify(tree, e) != e.label) out.push_back(i);
    }
    return out;
}

namespace {

// reachable: indices of the examples routed to this subtree.
NodePtr normalize_node(const NodePtr& node, const ClassificationInstance& instance,
                       const std::vector<std::size_t>& reachable) {
    if (node->is_leaf()) return node;

    std::size_t pos = 0;
    for (std::size_t i : reachable) {
        pos += instance.example(i).label == Label::positive;
    }
    if (pos == reachable.size() && !reachable.empty()) return make_leaf(Label::positive);
    if (pos == 0) return make_leaf(Label::negative);  // uniform negative or empty

    if (node->feature >= instance.num_features()) {
        throw usage_error("tree tests feature index out of range for instance");
    }
    std::vector<std::size_t> le_set, gt_set;
    for (std::size_t i : reachable) {
        if (instance.example(i).values[node->feature] <= node->threshold) {
            le_set.push_back(i);
        } else {
            gt_set.push_back(i);
        }
    }
    if (gt_set.empty()) return normalize_node(node->le, instance, reachable);
    if (le_set.empty()) return normalize_node(node->gt, instance, reachable);

    NodePtr le = normalize_node(node->le, instance, le_set);
    NodePtr gt = normalize_node(node->gt, instance, gt_set);
    if (le == node->le && gt == node->gt) return node;
    return make_test(node->feature, node->threshold, std::move(le), std::move(gt));
}

} // namespace

DecisionTree normalize(const DecisionTree& tree, const ClassificationInstance& instance) {
    std::vector<std::size_t> all(instance.num_examples());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return DecisionTree(normalize_node(tree.root_ptr(), instance, all));
}

} // namespace dtsolve
