#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dtsolve {

/// Feature values and thresholds are arbitrary signed integers.
using Value = std::int64_t;

enum class Label : std::uint8_t { negative = 0, positive = 1 };

inline Label opposite(Label l) {
    return l == Label::positive ? Label::negative : Label::positive;
}

inline char label_char(Label l) { return l == Label::positive ? '+' : '-'; }

/// One labeled example: an integer value per feature, by feature position.
struct Example {
    std::vector<Value> values;
    Label label = Label::negative;

    bool operator==(const Example&) const = default;
};

/// A set of labeled examples over a shared, ordered feature list.
///
/// Immutable after construction; per-feature value sets, label counts and
/// the maximum positive/negative disagreement are computed once up front,
/// so all accessors are safe to call concurrently.
class ClassificationInstance {
public:
    ClassificationInstance(std::vector<std::string> feature_names,
                           std::vector<Example> examples);

    std::size_t num_features() const { return feature_names_.size(); }
    std::size_t num_examples() const { return examples_.size(); }
    std::size_t num_positive() const { return num_positive_; }
    std::size_t num_negative() const { return examples_.size() - num_positive_; }

    const std::vector<std::string>& feature_names() const { return feature_names_; }
    const std::string& feature_name(std::size_t f) const;
    std::optional<std::size_t> feature_index(std::string_view name) const;

    const std::vector<Example>& examples() const { return examples_; }
    const Example& example(std::size_t i) const;

    /// Sorted distinct values feature f takes across all examples.
    const std::vector<Value>& domain(std::size_t f) const;

    /// Maximum number of features any positive/negative pair disagrees on;
    /// 0 when either class is empty.
    std::size_t delta_max() const { return delta_max_; }

    bool operator==(const ClassificationInstance&) const = default;

private:
    std::vector<std::string> feature_names_;
    std::vector<Example> examples_;
    std::vector<std::vector<Value>> domains_;
    std::size_t num_positive_ = 0;
    std::size_t delta_max_ = 0;
};

/// Feature indices where e1 and e2 take different values, ascending.
std::vector<std::size_t> disagreement_set(const Example& e1, const Example& e2);

std::size_t delta_max(const ClassificationInstance& instance);

/// Maximum domain size over all features. Requires at least one feature.
std::size_t d_max(const ClassificationInstance& instance);

/// A partial assignment of values to features.
using Assignment = std::vector<std::pair<std::size_t, Value>>;

/// Indices of the examples agreeing with every pinned feature, ascending.
std::vector<std::size_t> examples_matching_assignment(const ClassificationInstance& instance,
                                                      const Assignment& alpha);

struct InstanceStats {
    std::size_t num_examples = 0;
    std::size_t num_features = 0;
    std::size_t delta_max = 0;
    std::size_t d_max = 0;
    std::size_t num_positive = 0;
    std::size_t num_negative = 0;

    bool operator==(const InstanceStats&) const = default;
};

/// d_max is reported as 0 for a zero-feature instance.
InstanceStats compute_stats(const ClassificationInstance& instance);

} // namespace dtsolve
