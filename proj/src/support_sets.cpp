#include "dtsolve/support_sets.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <unordered_map>

#include "dtsolve/errors.hpp"
#include "dtsolve/solver.hpp"

namespace dtsolve {

namespace {

struct VectorHash {
    std::size_t operator()(const std::vector<Value>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (Value x : v) {
            h ^= static_cast<std::size_t>(x);
            h *= 1099511628211ull;
        }
        return h;
    }
};

std::vector<std::size_t> checked_sorted_features(const std::vector<std::size_t>& features,
                                                 const ClassificationInstance& instance) {
    std::vector<std::size_t> s(features);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (!s.empty() && s.back() >= instance.num_features()) {
        throw usage_error("support set uses feature index out of range");
    }
    return s;
}

std::uint64_t cost_of(const std::vector<std::size_t>& sorted_features,
                      const ClassificationInstance& instance) {
    std::unordered_map<std::vector<Value>, std::pair<std::uint64_t, std::uint64_t>, VectorHash>
        classes;
    classes.reserve(instance.num_examples());
    std::vector<Value> key(sorted_features.size());
    for (const auto& e : instance.examples()) {
        for (std::size_t j = 0; j < sorted_features.size(); ++j) {
            key[j] = e.values[sorted_features[j]];
        }
        auto& counts = classes[key];
        if (e.label == Label::positive) {
            ++counts.first;
        } else {
            ++counts.second;
        }
    }
    std::uint64_t total = 0;
    for (const auto& [unused, counts] : classes) {
        (void)unused;
        total += std::min(counts.first, counts.second);
    }
    return total;
}

// Branching state shared by the enumerators and the existence check.
struct BranchContext {
    const ClassificationInstance& instance;
    std::vector<std::size_t> positives;
    std::vector<std::size_t> negatives;

    explicit BranchContext(const ClassificationInstance& e) : instance(e) {
        for (std::size_t i = 0; i < e.num_examples(); ++i) {
            (e.example(i).label == Label::positive ? positives : negatives).push_back(i);
        }
    }

    bool agree_on(const std::vector<std::size_t>& features, std::size_t a,
                  std::size_t b) const {
        const auto& ea = instance.example(a).values;
        const auto& eb = instance.example(b).values;
        for (std::size_t f : features) {
            if (ea[f] != eb[f]) return false;
        }
        return true;
    }

    // Lowest-index uncharged positive, then lowest-index uncharged negative,
    // agreeing on every feature of S.
    std::optional<std::pair<std::size_t, std::size_t>> undistinguished_pair(
        const std::vector<std::size_t>& features, const std::vector<char>& charged) const {
        for (std::size_t p : positives) {
            if (charged[p]) continue;
            for (std::size_t n : negatives) {
                if (charged[n]) continue;
                if (agree_on(features, p, n)) return std::make_pair(p, n);
            }
        }
        return std::nullopt;
    }
};

void insert_sorted(std::vector<std::size_t>& s, std::size_t f) {
    s.insert(std::lower_bound(s.begin(), s.end(), f), f);
}

void remove_sorted(std::vector<std::size_t>& s, std::size_t f) {
    s.erase(std::lower_bound(s.begin(), s.end(), f));
}

// Plain enumeration: extend S along disagreement features of the first
// undistinguished pair until S supports E or the size bound is hit.
void enum_plain(const BranchContext& ctx, std::vector<std::size_t>& s, std::size_t k,
                const std::vector<char>& charged, std::set<std::vector<std::size_t>>& out,
                EnumStats& stats) {
    ++stats.branch_nodes;
    auto pair = ctx.undistinguished_pair(s, charged);
    if (!pair) {
        out.insert(s);
        ++stats.leaves;
        return;
    }
    if (s.size() >= k) {
        ++stats.leaves;
        return;
    }
    auto delta =
        disagreement_set(ctx.instance.example(pair->first), ctx.instance.example(pair->second));
    if (delta.empty()) {
        ++stats.leaves;  // contradictory duplicate pair: no feature can separate
        return;
    }
    for (std::size_t f : delta) {
        insert_sorted(s, f);
        enum_plain(ctx, s, k, charged, out, stats);
        remove_sorted(s, f);
    }
}

// Charging enumeration: additionally branch on marking either endpoint of
// the pair as an outlier. Children outside the (k, t) bounds are not
// generated, so the branching tree has at most (delta_max+2)^(k+t) leaves.
void enum_charging(const BranchContext& ctx, std::vector<std::size_t>& s,
                   std::vector<char>& charged, std::uint64_t charged_count, std::size_t k,
                   std::uint64_t t, std::set<std::vector<std::size_t>>& out, EnumStats& stats) {
    ++stats.branch_nodes;
    if (cost_of(s, ctx.instance) <= t) {
        out.insert(s);
        ++stats.leaves;
        return;
    }
    auto pair = ctx.undistinguished_pair(s, charged);
    if (!pair) {
        // Unreachable while charged_count <= t: covering all undistinguished
        // pairs requires a full class side each, forcing cost <= t above.
        ++stats.leaves;
        return;
    }
    bool expanded = false;
    if (s.size() < k) {
        auto delta = disagreement_set(ctx.instance.example(pair->first),
                                      ctx.instance.example(pair->second));
        for (std::size_t f : delta) {
            expanded = true;
            insert_sorted(s, f);
            enum_charging(ctx, s, charged, charged_count, k, t, out, stats);
            remove_sorted(s, f);
        }
    }
    if (charged_count < t) {
        for (std::size_t e : {pair->first, pair->second}) {
            expanded = true;
            charged[e] = 1;
            enum_charging(ctx, s, charged, charged_count + 1, k, t, out, stats);
            charged[e] = 0;
        }
    }
    if (!expanded) ++stats.leaves;
}

// Existence-only variant with a node cap; used as the solver's root filter.
enum class Existence { found, exhausted, capped };

Existence exists_within(const BranchContext& ctx, std::vector<std::size_t>& s,
                        std::vector<char>& charged, std::uint64_t charged_count, std::size_t k,
                        std::uint64_t t, std::uint64_t& nodes, std::uint64_t node_cap) {
    if (++nodes > node_cap) return Existence::capped;
    if (cost_of(s, ctx.instance) <= t) return Existence::found;
    auto pair = ctx.undistinguished_pair(s, charged);
    if (!pair) return Existence::exhausted;
    bool capped = false;
    if (s.size() < k) {
        auto delta = disagreement_set(ctx.instance.example(pair->first),
                                      ctx.instance.example(pair->second));
        for (std::size_t f : delta) {
            insert_sorted(s, f);
            Existence r = exists_within(ctx, s, charged, charged_count, k, t, nodes, node_cap);
            remove_sorted(s, f);
            if (r == Existence::found) return r;
            capped |= r == Existence::capped;
        }
    }
    if (charged_count < t) {
        for (std::size_t e : {pair->first, pair->second}) {
            charged[e] = 1;
            Existence r =
                exists_within(ctx, s, charged, charged_count + 1, k, t, nodes, node_cap);
            charged[e] = 0;
            if (r == Existence::found) return r;
            capped |= r == Existence::capped;
        }
    }
    return capped ? Existence::capped : Existence::exhausted;
}

bool minimal_at(const std::vector<std::size_t>& s, const ClassificationInstance& instance,
                std::uint64_t t) {
    // Under cost monotonicity, single-feature removals certify inclusion
    // minimality.
    std::vector<std::size_t> reduced;
    reduced.reserve(s.size());
    for (std::size_t skip = 0; skip < s.size(); ++skip) {
        reduced.clear();
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (j != skip) reduced.push_back(s[j]);
        }
        if (cost_of(reduced, instance) <= t) return false;
    }
    return true;
}

void order_family(std::vector<std::vector<std::size_t>>& family) {
    std::sort(family.begin(), family.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
}

} // namespace

std::uint64_t outlier_cost(const std::vector<std::size_t>& features,
                           const ClassificationInstance& instance) {
    return cost_of(checked_sorted_features(features, instance), instance);
}

bool is_support_set(const std::vector<std::size_t>& features,
                    const ClassificationInstance& instance) {
    return outlier_cost(features, instance) == 0;
}

std::vector<std::vector<std::size_t>> enum_minimal_support_sets(
    const ClassificationInstance& instance, std::size_t k, EnumStats* stats) {
    BranchContext ctx(instance);
    std::set<std::vector<std::size_t>> raw;
    EnumStats local;
    std::vector<std::size_t> s;
    std::vector<char> charged(instance.num_examples(), 0);
    enum_plain(ctx, s, k, charged, raw, local);
    if (stats) *stats = local;

    std::vector<std::vector<std::size_t>> family;
    for (const auto& candidate : raw) {
        if (minimal_at(candidate, instance, 0)) family.push_back(candidate);
    }
    order_family(family);
    return family;
}

std::vector<SupportSetReport> enum_minimal_support_sets_outliers(
    const ClassificationInstance& instance, std::size_t k, std::uint64_t t, EnumStats* stats) {
    BranchContext ctx(instance);
    std::set<std::vector<std::size_t>> raw;
    EnumStats local;
    std::vector<std::size_t> s;
    std::vector<char> charged(instance.num_examples(), 0);
    enum_charging(ctx, s, charged, 0, k, t, raw, local);
    if (stats) *stats = local;

    std::vector<std::vector<std::size_t>> family;
    for (const auto& candidate : raw) {
        if (minimal_at(candidate, instance, t)) family.push_back(candidate);
    }
    order_family(family);

    std::vector<SupportSetReport> reports;
    reports.reserve(family.size());
    for (auto& features : family) {
        SupportSetReport r;
        r.outlier_cost = cost_of(features, instance);
        r.minimal = true;
        r.features = std::move(features);
        reports.push_back(std::move(r));
    }
    return reports;
}

bool support_feasibility(const ClassificationInstance& instance, std::size_t k,
                         std::uint64_t t, Objective objective) {
    std::size_t cap = k;
    if (objective == Objective::depth) {
        cap = k >= 63 ? instance.num_features() : (std::size_t{1} << k) - 1;
    }
    cap = std::min(cap, instance.num_features());

    std::vector<std::size_t> all(instance.num_features());
    for (std::size_t f = 0; f < all.size(); ++f) all[f] = f;
    if (cost_of(all, instance) > t) return false;  // no superset-closed S can do better
    if (cap == instance.num_features()) return true;

    BranchContext ctx(instance);
    std::vector<std::size_t> s;
    std::vector<char> charged(instance.num_examples(), 0);
    std::uint64_t nodes = 0;
    switch (exists_within(ctx, s, charged, 0, cap, t, nodes, 2'000'000)) {
        case Existence::found:
            return true;
        case Existence::exhausted:
            return false;
        case Existence::capped:
            return true;  // undecided within the cap: stay non-committal
    }
    return true;
}

} // namespace dtsolve
