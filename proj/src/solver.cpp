#include "dtsolve/solver.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "dtsolve/errors.hpp"
#include "dtsolve/support_sets.hpp"

namespace dtsolve {

namespace {

// ---------------------------------------------------------------------------
// Example subsets as fixed-width bitsets (memo keys and split bookkeeping).

using Mask = std::vector<std::uint64_t>;

void mask_set(Mask& m, std::size_t i) { m[i >> 6] |= std::uint64_t{1} << (i & 63); }

bool mask_test(const Mask& m, std::size_t i) {
    return (m[i >> 6] >> (i & 63)) & 1;
}

Mask mask_difference(const Mask& a, const Mask& b) {
    Mask out(a.size());
    for (std::size_t w = 0; w < a.size(); ++w) out[w] = a[w] & ~b[w];
    return out;
}

struct MemoKey {
    Mask mask;
    std::uint32_t budget = 0;

    bool operator==(const MemoKey&) const = default;
};

struct MemoKeyHash {
    std::size_t operator()(const MemoKey& key) const {
        std::size_t h = 1469598103934665603ull ^ key.budget;
        for (std::uint64_t w : key.mask) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return h;
    }
};

// ---------------------------------------------------------------------------
// Exact search for the minimum weighted outlier count over all trees within
// a structural budget, memoized per (example subset, remaining budget).

class SearchContext {
public:
    SearchContext(const ClassificationInstance& instance, Objective objective,
                  const SolveOptions& options)
        : instance_(instance),
          objective_(objective),
          threads_(std::max(1, options.threads)),
          node_cap_(options.node_cap) {
        const std::size_t n = instance.num_examples();
        words_ = (n + 63) / 64;
        full_.assign(words_, 0);
        for (std::size_t i = 0; i < n; ++i) mask_set(full_, i);

        weights_.assign(n, 1);
        if (options.weights) {
            if (options.weights->size() != n) {
                throw usage_error("weights size must match the number of examples");
            }
            for (std::uint64_t w : *options.weights) {
                if (w == 0) throw usage_error("weights must be positive");
            }
            weights_ = *options.weights;
        }
        positive_.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            positive_[i] = instance.example(i).label == Label::positive;
        }

        // Per feature, example indices ordered by value (ties by index);
        // subset sweeps reuse this instead of re-sorting.
        order_.resize(instance.num_features());
        for (std::size_t f = 0; f < instance.num_features(); ++f) {
            auto& ord = order_[f];
            ord.resize(n);
            std::iota(ord.begin(), ord.end(), 0);
            std::stable_sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
                return instance.example(a).values[f] < instance.example(b).values[f];
            });
        }
    }

    std::uint64_t min_outliers(std::size_t budget) {
        return evaluate(full_, checked_budget(budget), threads_ > 1).best;
    }

    DecisionTree witness(std::size_t budget) { return rebuild(full_, checked_budget(budget)); }

    std::uint64_t nodes_explored() const { return nodes_.load(std::memory_order_relaxed); }

private:
    struct Choice {
        bool leaf = true;
        Label label = Label::negative;
        std::uint32_t feature = 0;
        Value threshold = 0;
        std::uint32_t budget_le = 0;
        std::uint32_t budget_gt = 0;
    };

    struct Entry {
        std::uint64_t best = 0;
        Choice choice;
    };

    struct Candidate {
        std::uint32_t feature;
        Value threshold;
        std::uint32_t budget_le;
        std::uint32_t budget_gt;
    };

    static std::uint32_t checked_budget(std::size_t budget) {
        if (budget > 0xffffffffull) throw usage_error("structural budget too large");
        return static_cast<std::uint32_t>(budget);
    }

    std::optional<Entry> memo_find(const MemoKey& key) {
        if (parallel_memo_) {
            std::lock_guard<std::mutex> lock(memo_mutex_);
            auto it = memo_.find(key);
            if (it == memo_.end()) return std::nullopt;
            return it->second;
        }
        auto it = memo_.find(key);
        if (it == memo_.end()) return std::nullopt;
        return it->second;
    }

    void memo_put(MemoKey key, const Entry& entry) {
        if (parallel_memo_) {
            std::lock_guard<std::mutex> lock(memo_mutex_);
            memo_.emplace(std::move(key), entry);
        } else {
            memo_.emplace(std::move(key), entry);
        }
    }

    void count_node() {
        if (nodes_.fetch_add(1, std::memory_order_relaxed) + 1 > node_cap_) {
            throw resource_limit_error("node exploration cap exceeded (" +
                                       std::to_string(node_cap_) + ")");
        }
    }

    void weighted_counts(const Mask& mask, std::uint64_t& wpos, std::uint64_t& wneg) const {
        wpos = wneg = 0;
        for (std::size_t w = 0; w < mask.size(); ++w) {
            std::uint64_t bits = mask[w];
            while (bits) {
                std::size_t i = (w << 6) + static_cast<std::size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                (positive_[i] ? wpos : wneg) += weights_[i];
            }
        }
    }

    // Present examples in ascending feature order; single pass over the
    // precomputed order.
    void gather(const Mask& mask, std::size_t feature, std::vector<std::uint32_t>& out) const {
        out.clear();
        for (std::uint32_t i : order_[feature]) {
            if (mask_test(mask, i)) out.push_back(i);
        }
    }

    void child_budgets(std::uint32_t budget, std::vector<std::pair<std::uint32_t, std::uint32_t>>& out) const {
        out.clear();
        if (objective_ == Objective::depth) {
            out.emplace_back(budget - 1, budget - 1);
        } else {
            for (std::uint32_t left = 0; left < budget; ++left) {
                out.emplace_back(left, budget - 1 - left);
            }
        }
    }

    Entry evaluate(const Mask& mask, std::uint32_t budget, bool parallel_root) {
        MemoKey key{mask, budget};
        if (auto hit = memo_find(key)) return *hit;
        count_node();

        std::uint64_t wpos = 0, wneg = 0;
        weighted_counts(mask, wpos, wneg);
        Entry entry;
        entry.best = std::min(wpos, wneg);
        entry.choice.leaf = true;
        entry.choice.label = wpos > wneg ? Label::positive : Label::negative;

        if (budget > 0 && entry.best > 0) {
            if (parallel_root) {
                search_splits_parallel(mask, budget, entry);
            } else {
                search_splits(mask, budget, entry);
            }
        }
        memo_put(std::move(key), entry);
        return entry;
    }

    // Single test with two leaves: sweep each feature order once instead of
    // materializing every (grandchild, 0) subproblem.
    void terminal_sweep(const Mask& mask, Entry& entry) {
        std::vector<std::uint32_t> present;
        std::uint64_t total_pos = 0, total_neg = 0;
        weighted_counts(mask, total_pos, total_neg);
        for (std::size_t f = 0; f < instance_.num_features() && entry.best > 0; ++f) {
            gather(mask, f, present);
            if (present.size() < 2) continue;
            std::uint64_t left_pos = 0, left_neg = 0;
            for (std::size_t i = 0; i < present.size();) {
                const Value value = instance_.example(present[i]).values[f];
                for (; i < present.size() && instance_.example(present[i]).values[f] == value;
                     ++i) {
                    (positive_[present[i]] ? left_pos : left_neg) += weights_[present[i]];
                }
                if (i == present.size()) break;
                const std::uint64_t cost = std::min(left_pos, left_neg) +
                                           std::min(total_pos - left_pos,
                                                    total_neg - left_neg);
                if (cost < entry.best) {
                    entry.best = cost;
                    entry.choice =
                        Choice{false, Label::negative, static_cast<std::uint32_t>(f), value,
                               0, 0};
                    if (entry.best == 0) break;
                }
            }
        }
    }

    // Sequential scan in canonical order: ascending feature, threshold, left
    // budget share. Only strict improvements are taken, so the first optimum
    // in that order wins.
    void search_splits(const Mask& mask, std::uint32_t budget, Entry& entry) {
        if (budget == 1) {
            terminal_sweep(mask, entry);
            return;
        }
        std::vector<std::uint32_t> present;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> budgets;
        child_budgets(budget, budgets);
        for (std::size_t f = 0; f < instance_.num_features() && entry.best > 0; ++f) {
            gather(mask, f, present);
            if (present.size() < 2) continue;
            Mask left(words_, 0);
            for (std::size_t i = 0; i < present.size() && entry.best > 0;) {
                const Value value = instance_.example(present[i]).values[f];
                for (; i < present.size() && instance_.example(present[i]).values[f] == value;
                     ++i) {
                    mask_set(left, present[i]);
                }
                if (i == present.size()) break;  // the maximum is not a threshold
                Mask right = mask_difference(mask, left);
                for (const auto& [bl, br] : budgets) {
                    std::uint64_t cost_le = evaluate(left, bl, false).best;
                    if (cost_le >= entry.best) continue;
                    std::uint64_t cost = cost_le + evaluate(right, br, false).best;
                    if (cost < entry.best) {
                        entry.best = cost;
                        entry.choice = Choice{false, Label::negative,
                                              static_cast<std::uint32_t>(f), value, bl, br};
                        if (entry.best == 0) break;
                    }
                }
            }
        }
    }

    // Parallel variant used at the root: phase one evaluates every candidate
    // child without cross-candidate pruning (threads share the memo), phase
    // two re-runs the deterministic sequential selection against the now
    // warm memo, so the chosen tree matches the sequential one.
    void search_splits_parallel(const Mask& mask, std::uint32_t budget, Entry& entry) {
        std::vector<Candidate> candidates;
        std::vector<std::uint32_t> present;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> budgets;
        child_budgets(budget, budgets);
        for (std::size_t f = 0; f < instance_.num_features(); ++f) {
            gather(mask, f, present);
            if (present.size() < 2) continue;
            for (std::size_t i = 0; i < present.size();) {
                const Value value = instance_.example(present[i]).values[f];
                while (i < present.size() && instance_.example(present[i]).values[f] == value) {
                    ++i;
                }
                if (i == present.size()) break;
                for (const auto& [bl, br] : budgets) {
                    candidates.push_back(
                        Candidate{static_cast<std::uint32_t>(f), value, bl, br});
                }
            }
        }

        parallel_memo_ = true;
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads_));
        for (int thread = 0; thread < threads_; ++thread) {
            workers.emplace_back([&, thread] {
                try {
                    while (true) {
                        std::size_t at = next.fetch_add(1);
                        if (at >= candidates.size()) return;
                        const Candidate& c = candidates[at];
                        Mask left(words_, 0);
                        for (std::size_t w = 0; w < words_; ++w) {
                            std::uint64_t bits = mask[w];
                            while (bits) {
                                std::size_t i = (w << 6) +
                                                static_cast<std::size_t>(std::countr_zero(bits));
                                bits &= bits - 1;
                                if (instance_.example(i).values[c.feature] <= c.threshold) {
                                    mask_set(left, i);
                                }
                            }
                        }
                        Mask right = mask_difference(mask, left);
                        evaluate(left, c.budget_le, false);
                        evaluate(right, c.budget_gt, false);
                    }
                } catch (...) {
                    errors[static_cast<std::size_t>(thread)] = std::current_exception();
                }
            });
        }
        for (auto& worker : workers) worker.join();
        parallel_memo_ = false;
        for (auto& err : errors) {
            if (err) std::rethrow_exception(err);
        }

        search_splits(mask, budget, entry);
    }

    DecisionTree rebuild(const Mask& mask, std::uint32_t budget) {
        // The terminal sweep does not materialize grandchild entries, so fall
        // back to evaluate for anything the memo is missing.
        Entry entry = evaluate(mask, budget, false);
        const Entry* hit = &entry;
        if (hit->choice.leaf) return DecisionTree::leaf(hit->choice.label);
        Mask left(words_, 0);
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t bits = mask[w];
            while (bits) {
                std::size_t i = (w << 6) + static_cast<std::size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                if (instance_.example(i).values[hit->choice.feature] <= hit->choice.threshold) {
                    mask_set(left, i);
                }
            }
        }
        Mask right = mask_difference(mask, left);
        return DecisionTree::test(hit->choice.feature, hit->choice.threshold,
                                  rebuild(left, hit->choice.budget_le),
                                  rebuild(right, hit->choice.budget_gt));
    }

    const ClassificationInstance& instance_;
    Objective objective_;
    int threads_;
    std::uint64_t node_cap_;
    std::size_t words_ = 0;
    Mask full_;
    std::vector<std::uint64_t> weights_;
    std::vector<char> positive_;
    std::vector<std::vector<std::uint32_t>> order_;
    std::unordered_map<MemoKey, Entry, MemoKeyHash> memo_;
    std::mutex memo_mutex_;
    bool parallel_memo_ = false;
    std::atomic<std::uint64_t> nodes_{0};
};

std::uint64_t weighted_outliers_of(const DecisionTree& tree,
                                   const ClassificationInstance& instance,
                                   const std::vector<std::uint64_t>* weights) {
    std::uint64_t total = 0;
    for (std::size_t i : outliers(tree, instance)) {
        total += weights ? (*weights)[i] : 1;
    }
    return total;
}

// Weighted cost of the full feature set: the floor any tree must pay for
// identical vectors carrying both labels.
std::uint64_t forced_outliers(const ClassificationInstance& instance,
                              const std::vector<std::uint64_t>* weights) {
    std::map<std::vector<Value>, std::pair<std::uint64_t, std::uint64_t>> classes;
    for (std::size_t i = 0; i < instance.num_examples(); ++i) {
        const auto& e = instance.example(i);
        auto& counts = classes[e.values];
        (e.label == Label::positive ? counts.first : counts.second) +=
            weights ? (*weights)[i] : 1;
    }
    std::uint64_t total = 0;
    for (const auto& [unused, counts] : classes) {
        (void)unused;
        total += std::min(counts.first, counts.second);
    }
    return total;
}

SolveResult finish(SearchContext& ctx, const ClassificationInstance& instance,
                   std::size_t budget, std::uint64_t best, std::uint64_t t,
                   const std::vector<std::uint64_t>* weights) {
    SolveResult result;
    result.nodes_explored = ctx.nodes_explored();
    result.feasible = best <= t;
    if (result.feasible) {
        DecisionTree tree = ctx.witness(budget);
        result.achieved_size = tree_size(tree);
        result.achieved_depth = tree_depth(tree);
        result.achieved_outliers = weighted_outliers_of(tree, instance, weights);
        result.tree = std::move(tree);
    }
    return result;
}

} // namespace

SolveResult solve(const ClassificationInstance& instance, const Budget& budget,
                  const SolveOptions& options) {
    const std::vector<std::uint64_t>* weights =
        options.weights ? &*options.weights : nullptr;
    SearchContext ctx(instance, budget.objective, options);  // validates options up front

    // Root filter: a tree within budget needs a bounded feature set of
    // agreement cost <= t. The check is unweighted, which stays sound for
    // weights >= 1.
    const std::uint64_t trivial = std::min(instance.num_positive(), instance.num_negative());
    if (budget.t < trivial &&
        !support_feasibility(instance, budget.k, budget.t, budget.objective)) {
        return SolveResult{};
    }

    std::uint64_t best = ctx.min_outliers(budget.k);
    return finish(ctx, instance, budget.k, best, budget.t, weights);
}

std::size_t min_cost(const ClassificationInstance& instance, Objective objective,
                     std::uint64_t t, const SolveOptions& options) {
    const std::vector<std::uint64_t>* weights =
        options.weights ? &*options.weights : nullptr;
    if (forced_outliers(instance, weights) > t) {
        throw usage_error(
            "no decision tree reaches the outlier budget: identical vectors with both labels "
            "force more than t misclassifications");
    }
    SearchContext ctx(instance, objective, options);
    const std::size_t hard_cap = instance.num_examples() + 1;
    for (std::size_t k = 0; k <= hard_cap; ++k) {
        if (ctx.min_outliers(k) <= t) return k;
    }
    throw usage_error("min_cost exceeded its hard budget cap");  // unreachable
}

SolveResult oracle_solve(const ClassificationInstance& instance, const Budget& budget,
                         std::uint64_t node_cap) {
    struct Oracle {
        const ClassificationInstance& instance;
        Objective objective;
        std::uint64_t cap;
        std::uint64_t nodes = 0;

        std::pair<std::uint64_t, DecisionTree> run(const std::vector<std::uint32_t>& subset,
                                                   std::size_t budget) {
            if (++nodes > cap) throw resource_limit_error("oracle too large");
            std::uint64_t pos = 0;
            for (std::uint32_t i : subset) {
                pos += instance.example(i).label == Label::positive;
            }
            const std::uint64_t neg = subset.size() - pos;
            std::uint64_t best = std::min(pos, neg);
            DecisionTree best_tree =
                DecisionTree::leaf(pos > neg ? Label::positive : Label::negative);
            if (budget == 0 || subset.empty()) return {best, best_tree};

            std::vector<Value> values;
            std::vector<std::uint32_t> le_set, gt_set;
            for (std::size_t f = 0; f < instance.num_features(); ++f) {
                values.clear();
                for (std::uint32_t i : subset) values.push_back(instance.example(i).values[f]);
                std::sort(values.begin(), values.end());
                values.erase(std::unique(values.begin(), values.end()), values.end());
                if (values.size() < 2) continue;
                values.pop_back();  // the maximum yields an empty right side
                for (Value threshold : values) {
                    le_set.clear();
                    gt_set.clear();
                    for (std::uint32_t i : subset) {
                        (instance.example(i).values[f] <= threshold ? le_set : gt_set)
                            .push_back(i);
                    }
                    const std::size_t shares =
                        objective == Objective::depth ? 1 : budget;
                    for (std::size_t share = 0; share < shares; ++share) {
                        const std::size_t budget_le =
                            objective == Objective::depth ? budget - 1 : share;
                        const std::size_t budget_gt =
                            objective == Objective::depth ? budget - 1 : budget - 1 - share;
                        auto [cost_le, tree_le] = run(le_set, budget_le);
                        auto [cost_gt, tree_gt] = run(gt_set, budget_gt);
                        if (cost_le + cost_gt < best) {
                            best = cost_le + cost_gt;
                            best_tree = DecisionTree::test(f, threshold, tree_le, tree_gt);
                        }
                    }
                }
            }
            return {best, best_tree};
        }
    };

    Oracle oracle{instance, budget.objective, node_cap};
    std::vector<std::uint32_t> all(instance.num_examples());
    std::iota(all.begin(), all.end(), 0);
    auto [best, tree] = oracle.run(all, budget.k);

    SolveResult result;
    result.nodes_explored = oracle.nodes;
    result.feasible = best <= budget.t;
    if (result.feasible) {
        result.achieved_size = tree_size(tree);
        result.achieved_depth = tree_depth(tree);
        result.achieved_outliers = weighted_outliers_of(tree, instance, nullptr);
        result.tree = std::move(tree);
    }
    return result;
}

std::uint64_t oracle_min_outliers(const ClassificationInstance& instance, Objective objective,
                                  std::size_t k, std::uint64_t node_cap) {
    SolveResult r = oracle_solve(instance, Budget{objective, k, ~std::uint64_t{0}}, node_cap);
    return r.achieved_outliers;
}

} // namespace dtsolve
