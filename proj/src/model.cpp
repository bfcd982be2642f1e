#include "dtsolve/model.hpp"

#include <algorithm>
#include <unordered_set>

#include "dtsolve/errors.hpp"

namespace dtsolve {

ClassificationInstance::ClassificationInstance(std::vector<std::string> feature_names,
                                               std::vector<Example> examples)
    : feature_names_(std::move(feature_names)), examples_(std::move(examples)) {
    {
        std::unordered_set<std::string_view> seen;
        for (const auto& name : feature_names_) {
            if (!seen.insert(name).second) {
                throw usage_error("duplicate feature name: " + name);
            }
        }
    }
    const std::size_t f = feature_names_.size();
    for (const auto& e : examples_) {
        if (e.values.size() != f) {
            throw usage_error("example has " + std::to_string(e.values.size()) +
                              " values, instance has " + std::to_string(f) + " features");
        }
        if (e.label == Label::positive) ++num_positive_;
    }

    domains_.resize(f);
    for (std::size_t j = 0; j < f; ++j) {
        auto& dom = domains_[j];
        dom.reserve(examples_.size());
        for (const auto& e : examples_) dom.push_back(e.values[j]);
        std::sort(dom.begin(), dom.end());
        dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
    }

    for (const auto& pos : examples_) {
        if (pos.label != Label::positive) continue;
        for (const auto& neg : examples_) {
            if (neg.label != Label::negative) continue;
            std::size_t diff = 0;
            for (std::size_t j = 0; j < f; ++j) {
                diff += pos.values[j] != neg.values[j];
            }
            delta_max_ = std::max(delta_max_, diff);
        }
    }
}

const std::string& ClassificationInstance::feature_name(std::size_t f) const {
    if (f >= feature_names_.size()) throw usage_error("feature index out of range");
    return feature_names_[f];
}

std::optional<std::size_t> ClassificationInstance::feature_index(std::string_view name) const {
    for (std::size_t j = 0; j < feature_names_.size(); ++j) {
        if (feature_names_[j] == name) return j;
    }
    return std::nullopt;
}

const Example& ClassificationInstance::example(std::size_t i) const {
    if (i >= examples_.size()) throw usage_error("example index out of range");
    return examples_[i];
}

const std::vector<Value>& ClassificationInstance::domain(std::size_t f) const {
    if (f >= domains_.size()) throw usage_error("feature index out of range");
    return domains_[f];
}

std::vector<std::size_t> disagreement_set(const Example& e1, const Example& e2) {
    if (e1.values.size() != e2.values.size()) {
        throw usage_error("disagreement_set: examples have different feature counts");
    }
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < e1.values.size(); ++j) {
        if (e1.values[j] != e2.values[j]) out.push_back(j);
    }
    return out;
}

std::size_t delta_max(const ClassificationInstance& instance) { return instance.delta_max(); }

std::size_t d_max(const ClassificationInstance& instance) {
    if (instance.num_features() == 0) throw usage_error("d_max: instance has no features");
    std::size_t best = 0;
    for (std::size_t j = 0; j < instance.num_features(); ++j) {
        best = std::max(best, instance.domain(j).size());
    }
    return best;
}

std::vector<std::size_t> examples_matching_assignment(const ClassificationInstance& instance,
                                                      const Assignment& alpha) {
    for (const auto& [f, v] : alpha) {
        (void)v;
        if (f >= instance.num_features()) {
            throw usage_error("assignment uses feature index out of range");
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < instance.num_examples(); ++i) {
        const auto& e = instance.example(i);
        bool ok = true;
        for (const auto& [f, v] : alpha) {
            if (e.values[f] != v) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(i);
    }
    return out;
}

InstanceStats compute_stats(const ClassificationInstance& instance) {
    InstanceStats s;
    s.num_examples = instance.num_examples();
    s.num_features = instance.num_features();
    s.delta_max = instance.delta_max();
    s.d_max = instance.num_features() == 0 ? 0 : d_max(instance);
    s.num_positive = instance.num_positive();
    s.num_negative = instance.num_negative();
    return s;
}

} // namespace dtsolve
