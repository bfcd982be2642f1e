// Acceptance suite: runs the project's end-to-end correctness gates and
// prints one pass/fail line per criterion. Exit status is nonzero when any
// criterion fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "dtsolve/errors.hpp"
#include "dtsolve/model.hpp"
#include "dtsolve/preprocess.hpp"
#include "dtsolve/reductions.hpp"
#include "dtsolve/solver.hpp"
#include "dtsolve/support_sets.hpp"
#include "dtsolve/tree.hpp"

using namespace dtsolve;

namespace {

// xorshift, independent of the library's generator
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

struct CriterionResult {
    bool pass = true;
    std::string details;
    double seconds = 0.0;
};

struct Failure {
    std::size_t count = 0;
    std::string first;

    void add(const std::string& what) {
        if (count == 0) first = what;
        ++count;
    }
};

// Criterion 8 accumulator: every instance produced anywhere in the suite is
// checked against the counting bound after deduplication.
struct BoundAudit {
    std::size_t checked = 0;
    std::size_t skipped = 0;  // a class was empty after dedup
    Failure failures;

    void audit(const ClassificationInstance& instance, const std::string& origin) {
        auto report = dedup(instance);
        if (report.kept.num_positive() == 0 || report.kept.num_negative() == 0) {
            ++skipped;
            return;
        }
        ++checked;
        auto stats = compute_stats(report.kept);
        BigInt bound =
            trivial_kernel_bound(stats.num_features, stats.delta_max, stats.d_max);
        if (BigInt(stats.num_examples) > bound) {
            failures.add(origin + ": " + std::to_string(stats.num_examples) + " examples > bound " +
                         bound.str());
        }
    }
};

// Criterion 4 accumulator, split by generator family.
struct DeltaAudit {
    std::size_t pvc_checked = 0, and_checked = 0;
    Failure pvc_failures, and_failures;

    void audit_pvc(const ClassificationInstance& instance, const std::string& origin) {
        ++pvc_checked;
        if (delta_max(instance) > 3) {
            pvc_failures.add(origin + ": delta_max=" + std::to_string(delta_max(instance)));
        }
    }
    void audit_and(const ClassificationInstance& instance, const std::string& origin) {
        ++and_checked;
        if (delta_max(instance) > 3) {
            and_failures.add(origin + ": delta_max=" + std::to_string(delta_max(instance)));
        }
    }
};

std::uint64_t pow_u64(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t out = 1;
    while (exp--) out *= base;
    return out;
}

constexpr std::size_t kNoCost = ~std::size_t{0};

// min_cost refuses budgets below the contradiction floor; map that to "no
// finite cost" so the comparisons below stay total.
std::size_t min_cost_or_none(const ClassificationInstance& instance, Objective objective,
                             std::uint64_t t) {
    try {
        return min_cost(instance, objective, t);
    } catch (const usage_error&) {
        return kNoCost;
    }
}

std::string describe_instance(std::size_t index) { return "instance#" + std::to_string(index); }

// --- non-isomorphic graph enumeration (n <= 5) ------------------------------

std::vector<std::pair<std::size_t, std::size_t>> vertex_pairs(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    }
    return pairs;
}

std::uint32_t relabel_mask(std::uint32_t mask, const std::vector<std::size_t>& perm,
                           const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    std::uint32_t out = 0;
    for (std::size_t bit = 0; bit < pairs.size(); ++bit) {
        if (!((mask >> bit) & 1)) continue;
        auto [u, v] = pairs[bit];
        const std::pair<std::size_t, std::size_t> key{std::min(perm[u], perm[v]),
                                                      std::max(perm[u], perm[v])};
        for (std::size_t target = 0; target < pairs.size(); ++target) {
            if (pairs[target] == key) {
                out |= std::uint32_t{1} << target;
                break;
            }
        }
    }
    return out;
}

std::vector<Graph> nonisomorphic_graphs(std::size_t n) {
    auto pairs = vertex_pairs(n);
    std::vector<std::size_t> identity(n);
    std::iota(identity.begin(), identity.end(), 0);
    std::vector<Graph> graphs;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << pairs.size()); ++mask) {
        std::uint32_t canonical = mask;
        auto perm = identity;
        do {
            canonical = std::min(canonical, relabel_mask(mask, perm, pairs));
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (canonical != mask) continue;
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (std::size_t bit = 0; bit < pairs.size(); ++bit) {
            if ((mask >> bit) & 1) edges.push_back(pairs[bit]);
        }
        graphs.emplace_back(n, std::move(edges));
    }
    return graphs;
}

// --- criteria ----------------------------------------------------------------

std::vector<ClassificationInstance> make_sample_instances() {
    std::vector<ClassificationInstance> instances;
    Rng rng(20240);
    while (instances.size() < 200) {
        const std::size_t features = 1 + rng.below(5);
        const std::size_t examples = rng.below(13);
        const std::size_t dmax = 1 + rng.below(3);
        instances.push_back(random_instance(rng.next(), features, examples, dmax));
    }
    return instances;
}

CriterionResult criterion1(const std::vector<ClassificationInstance>& instances,
                           BoundAudit& bounds) {
    Failure failures;
    std::size_t feasibility_checks = 0, optimum_checks = 0;
    for (std::size_t index = 0; index < instances.size(); ++index) {
        const auto& instance = instances[index];
        bounds.audit(instance, describe_instance(index));
        for (auto objective : {Objective::size, Objective::depth}) {
            std::vector<std::uint64_t> oracle_best;
            for (std::size_t k = 0; k <= 4; ++k) {
                oracle_best.push_back(oracle_min_outliers(instance, objective, k));
            }
            for (std::size_t k = 0; k <= 4; ++k) {
                for (std::uint64_t t = 0; t <= 2; ++t) {
                    ++feasibility_checks;
                    const bool expected = oracle_best[k] <= t;
                    if (solve(instance, {objective, k, t}).feasible != expected) {
                        failures.add(describe_instance(index) + " " +
                                     objective_name(objective) + " k=" + std::to_string(k) +
                                     " t=" + std::to_string(t));
                    }
                }
            }
            for (std::uint64_t t = 0; t <= 2; ++t) {
                ++optimum_checks;
                std::size_t oracle_opt = 5;  // sentinel: beyond the k <= 4 window
                for (std::size_t k = 0; k <= 4; ++k) {
                    if (oracle_best[k] <= t) {
                        oracle_opt = k;
                        break;
                    }
                }
                const std::size_t got = min_cost_or_none(instance, objective, t);
                const bool ok = oracle_opt == 5 ? (got == kNoCost || got > 4)
                                                : got == oracle_opt;
                if (!ok) {
                    failures.add(describe_instance(index) + " min_cost " +
                                 objective_name(objective) + " t=" + std::to_string(t) +
                                 " got " + std::to_string(got));
                }
            }
        }
    }
    CriterionResult result;
    result.pass = failures.count == 0;
    std::ostringstream details;
    details << instances.size() << " instances, " << feasibility_checks
            << " feasibility checks, " << optimum_checks << " optimum checks";
    if (failures.count) details << "; first failure: " << failures.first;
    result.details = details.str();
    return result;
}

std::vector<std::vector<std::size_t>> brute_minimal_sets(const ClassificationInstance& instance,
                                                         std::size_t k, std::uint64_t t) {
    const std::size_t f = instance.num_features();
    std::vector<std::uint32_t> good;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << f); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) > k) continue;
        std::vector<std::size_t> features;
        for (std::size_t j = 0; j < f; ++j) {
            if ((mask >> j) & 1) features.push_back(j);
        }
        if (outlier_cost(features, instance) <= t) good.push_back(mask);
    }
    std::vector<std::vector<std::size_t>> family;
    for (std::uint32_t mask : good) {
        bool minimal = true;
        for (std::uint32_t other : good) {
            if (other != mask && (other & mask) == other) {
                minimal = false;
                break;
            }
        }
        if (!minimal) continue;
        std::vector<std::size_t> features;
        for (std::size_t j = 0; j < f; ++j) {
            if ((mask >> j) & 1) features.push_back(j);
        }
        family.push_back(std::move(features));
    }
    std::sort(family.begin(), family.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return family;
}

CriterionResult criterion2(const std::vector<ClassificationInstance>& instances) {
    Failure failures;
    std::size_t checks = 0;
    for (std::size_t index = 0; index < instances.size(); ++index) {
        const auto& instance = instances[index];
        if (instance.num_features() > 8) continue;
        const std::uint64_t dmax = delta_max(instance);
        for (std::size_t k = 0; k <= 3; ++k) {
            for (std::uint64_t t = 0; t <= 2; ++t) {
                ++checks;
                auto reports = enum_minimal_support_sets_outliers(instance, k, t);
                std::vector<std::vector<std::size_t>> got;
                got.reserve(reports.size());
                for (const auto& r : reports) got.push_back(r.features);
                if (got != brute_minimal_sets(instance, k, t)) {
                    failures.add(describe_instance(index) + " k=" + std::to_string(k) +
                                 " t=" + std::to_string(t) + " family mismatch");
                    continue;
                }
                const std::uint64_t bound =
                    std::max<std::uint64_t>(1, pow_u64(dmax, k) * pow_u64(t + 1, 2 * k));
                if (got.size() > bound) {
                    failures.add(describe_instance(index) + " cardinality " +
                                 std::to_string(got.size()) + " > " + std::to_string(bound));
                }
            }
        }
    }
    CriterionResult result;
    result.pass = failures.count == 0;
    std::ostringstream details;
    details << checks << " enumerations vs subset brute force";
    if (failures.count) details << "; first failure: " << failures.first;
    result.details = details.str();
    return result;
}

CriterionResult criterion3(DeltaAudit& deltas, BoundAudit& bounds) {
    Failure failures;
    std::size_t checks = 0;
    for (std::size_t n = 1; n <= 5; ++n) {
        for (const auto& graph : nonisomorphic_graphs(n)) {
            for (std::size_t k = 1; k <= 2; ++k) {
                for (std::size_t p = 0; p <= graph.m(); ++p) {
                    const bool expected = brute_pvc(graph, k, p);
                    for (auto objective : {Objective::size, Objective::depth}) {
                        ++checks;
                        auto reduction = pvc_to_dt_instance(graph, k, p, objective);
                        std::ostringstream origin;
                        origin << "pvc n=" << n << " m=" << graph.m() << " k=" << k
                               << " p=" << p << " " << objective_name(objective);
                        deltas.audit_pvc(reduction.instance, origin.str());
                        bounds.audit(reduction.instance, origin.str());
                        const bool got =
                            solve(reduction.instance, {objective, k, reduction.t}).feasible;
                        if (got != expected) failures.add(origin.str());
                    }
                }
            }
        }
    }
    CriterionResult result;
    result.pass = failures.count == 0;
    std::ostringstream details;
    details << checks << " reduced instances vs brute_pvc";
    if (failures.count) details << "; first failure: " << failures.first;
    result.details = details.str();
    return result;
}

CriterionResult criterion6(DeltaAudit& deltas, BoundAudit& bounds) {
    Failure failures;
    std::size_t checks = 0;
    auto graphs = nonisomorphic_graphs(4);
    for (std::size_t k = 1; k <= 2; ++k) {
        for (std::size_t a = 0; a < graphs.size(); ++a) {
            for (std::size_t b = a; b < graphs.size(); ++b) {
                ++checks;
                const bool expected = brute_vc(graphs[a], k) && brute_vc(graphs[b], k);
                auto composed = and_composition({graphs[a], graphs[b]}, k);
                std::ostringstream origin;
                origin << "andcomp k=" << k << " pair=(" << a << "," << b << ")";
                deltas.audit_and(composed.instance, origin.str());
                bounds.audit(composed.instance, origin.str());
                const std::size_t d = composed.depth_budget;
                if (d != 1 + k + 1) {
                    failures.add(origin.str() + " depth budget " + std::to_string(d));
                    continue;
                }
                const bool got =
                    solve(composed.instance, {Objective::depth, d, 0}).feasible;
                if (got != expected) failures.add(origin.str());
            }
        }
    }
    CriterionResult result;
    result.pass = failures.count == 0;
    std::ostringstream details;
    details << checks << " compositions of graph pairs (n=4)";
    if (failures.count) details << "; first failure: " << failures.first;
    result.details = details.str();
    return result;
}

struct SetSystemSweep {
    Failure duality_failures;
    Failure leaf_failures;  // criterion 5
    std::size_t systems = 0;
    std::size_t covering_systems = 0;
};

SetSystemSweep sweep_set_systems(BoundAudit& bounds) {
    SetSystemSweep sweep;
    for (std::size_t universe = 0; universe <= 5; ++universe) {
        std::vector<std::vector<std::size_t>> candidates;
        for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << universe); ++mask) {
            std::vector<std::size_t> set;
            for (std::size_t u = 0; u < universe; ++u) {
                if ((mask >> u) & 1) set.push_back(u);
            }
            candidates.push_back(std::move(set));
        }
        // all families of up to four distinct nonempty sets
        std::vector<std::size_t> pick;
        auto run_family = [&](const std::vector<std::size_t>& chosen) {
            ++sweep.systems;
            std::vector<std::vector<std::size_t>> sets;
            sets.reserve(chosen.size());
            for (std::size_t index : chosen) sets.push_back(candidates[index]);
            SetSystem system(universe, sets, 0);
            std::ostringstream origin;
            origin << "system u=" << universe << " id=" << sweep.systems;

            std::size_t min_hitting = universe + 1;
            for (std::size_t k = 0; k <= universe; ++k) {
                if (brute_hs(SetSystem(universe, sets, k))) {
                    min_hitting = k;
                    break;
                }
            }
            auto plain = hs_to_ci(system);
            auto flipped = hs_to_ci_complement(system);
            bounds.audit(plain, origin.str() + " hs");
            bounds.audit(flipped, origin.str() + " hsc");
            if (min_cost(plain, Objective::depth, 0) != min_hitting) {
                sweep.duality_failures.add(origin.str() + " hs depth");
            }
            if (min_cost(flipped, Objective::size, 0) != min_hitting) {
                sweep.duality_failures.add(origin.str() + " hsc size");
            }
            if (!solve(plain, {Objective::size, 0, 1}).feasible) {
                sweep.leaf_failures.add(origin.str());
            }

            std::vector<bool> covered(universe, false);
            for (const auto& set : sets) {
                for (std::size_t u : set) covered[u] = true;
            }
            if (std::find(covered.begin(), covered.end(), false) == covered.end()) {
                ++sweep.covering_systems;
                auto cover_instance = sc_to_ci(system);
                bounds.audit(cover_instance, origin.str() + " sc");
                std::size_t min_cover = sets.size() + 1;
                for (std::size_t k = 0; k <= sets.size(); ++k) {
                    if (brute_sc(SetSystem(universe, sets, k))) {
                        min_cover = k;
                        break;
                    }
                }
                if (min_cost(cover_instance, Objective::depth, 0) != min_cover ||
                    min_cost(cover_instance, Objective::size, 0) != min_cover) {
                    sweep.duality_failures.add(origin.str() + " sc");
                }
            }
        };
        std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start,
                                                                   std::size_t remaining) {
            run_family(pick);
            if (remaining == 0) return;
            for (std::size_t index = start; index < candidates.size(); ++index) {
                pick.push_back(index);
                choose(index + 1, remaining - 1);
                pick.pop_back();
            }
        };
        // run_family fires once per subset of size <= 4 (including the empty
        // family), visiting each exactly once
        std::vector<std::size_t> empty;
        pick.clear();
        choose(0, 4);
    }
    return sweep;
}

CriterionResult criterion9(const std::vector<ClassificationInstance>& instances) {
    Failure failures;
    Rng rng(555);
    std::size_t checks = 0;
    for (std::size_t index = 0; index < instances.size(); ++index) {
        const auto& instance = instances[index];
        std::size_t previous_size = kNoCost, previous_depth = kNoCost;
        for (std::uint64_t t = 0; t <= 2; ++t) {
            ++checks;
            const std::size_t size_cost = min_cost_or_none(instance, Objective::size, t);
            const std::size_t depth_cost = min_cost_or_none(instance, Objective::depth, t);
            // the contradiction floor is objective-independent
            bool ok = (size_cost == kNoCost) == (depth_cost == kNoCost);
            if (ok && size_cost != kNoCost) {
                ok = depth_cost <= size_cost &&
                     size_cost <= (std::size_t{1} << depth_cost) - 1;
                if (previous_size != kNoCost) {
                    ok = ok && size_cost <= previous_size && depth_cost <= previous_depth;
                }
            }
            if (!ok) {
                failures.add(describe_instance(index) + " t=" + std::to_string(t));
            }
            previous_size = size_cost;
            previous_depth = depth_cost;
        }
        // superset monotonicity of the agreement cost
        for (int round = 0; round < 5; ++round) {
            std::vector<std::size_t> small, large;
            for (std::size_t f = 0; f < instance.num_features(); ++f) {
                const auto draw = rng.below(3);
                if (draw == 0) small.push_back(f);
                if (draw <= 1) large.push_back(f);
            }
            for (std::size_t f : small) {
                if (std::find(large.begin(), large.end(), f) == large.end()) {
                    large.push_back(f);
                }
            }
            ++checks;
            if (outlier_cost(large, instance) > outlier_cost(small, instance)) {
                failures.add(describe_instance(index) + " superset cost grew");
            }
        }
    }
    CriterionResult result;
    result.pass = failures.count == 0;
    std::ostringstream details;
    details << checks << " monotonicity checks";
    if (failures.count) details << "; first failure: " << failures.first;
    result.details = details.str();
    return result;
}

} // namespace

int main() {
    std::vector<std::pair<std::string, CriterionResult>> results(10);

    auto timed = [&](int id, const std::string& name, auto&& body) {
        auto start = std::chrono::steady_clock::now();
        CriterionResult r = body();
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                        .count();
        results[static_cast<std::size_t>(id)] = {name, std::move(r)};
    };

    BoundAudit bounds;
    DeltaAudit deltas;
    auto instances = make_sample_instances();

    timed(1, "oracle equivalence", [&] { return criterion1(instances, bounds); });
    timed(2, "support-set enumeration vs brute force", [&] { return criterion2(instances); });
    timed(3, "partial-vertex-cover reduction equivalence",
          [&] { return criterion3(deltas, bounds); });

    SetSystemSweep sweep;
    timed(7, "hitting-set / set-cover dualities", [&] {
        sweep = sweep_set_systems(bounds);
        CriterionResult r;
        r.pass = sweep.duality_failures.count == 0;
        std::ostringstream details;
        details << sweep.systems << " set systems (" << sweep.covering_systems
                << " covering)";
        if (sweep.duality_failures.count) {
            details << "; first failure: " << sweep.duality_failures.first;
        }
        r.details = details.str();
        return r;
    });
    timed(5, "single-leaf feasibility at one outlier", [&] {
        CriterionResult r;
        r.pass = sweep.leaf_failures.count == 0;
        std::ostringstream details;
        details << sweep.systems << " hitting-set instances at (size, k=0, t=1)";
        if (sweep.leaf_failures.count) details << "; first failure: " << sweep.leaf_failures.first;
        r.details = details.str();
        return r;
    });
    timed(6, "and-composition equivalence", [&] { return criterion6(deltas, bounds); });
    timed(4, "delta_max <= 3 on generated instances", [&] {
        CriterionResult r;
        r.pass = deltas.pvc_failures.count == 0 && deltas.and_failures.count == 0;
        std::ostringstream details;
        details << deltas.pvc_checked << " pvc instances ("
                << deltas.pvc_failures.count << " over), " << deltas.and_checked
                << " compositions (" << deltas.and_failures.count << " over)";
        if (deltas.pvc_failures.count) details << "; first pvc: " << deltas.pvc_failures.first;
        if (deltas.and_failures.count) {
            details << "; first composition: " << deltas.and_failures.first;
        }
        r.details = details.str();
        return r;
    });
    timed(8, "counting bound after dedup", [&] {
        CriterionResult r;
        r.pass = bounds.failures.count == 0;
        std::ostringstream details;
        details << bounds.checked << " instances checked, " << bounds.skipped
                << " skipped (one-class)";
        if (bounds.failures.count) details << "; first failure: " << bounds.failures.first;
        r.details = details.str();
        return r;
    });
    timed(9, "monotonicity suite", [&] { return criterion9(instances); });

    bool all_pass = true;
    for (std::size_t id = 1; id <= 9; ++id) {
        const auto& [name, result] = results[id];
        all_pass = all_pass && result.pass;
        std::ostringstream line;
        line << "criterion " << id << " (" << name << "): "
             << (result.pass ? "PASS" : "FAIL") << " [" << result.details << "] "
             << static_cast<int>(result.seconds * 1000) << "ms";
        std::cout << line.str() << "\n";
    }
    std::cout << (all_pass ? "RESULT: all criteria passed" : "RESULT: some criteria FAILED")
              << "\n";
    return all_pass ? 0 : 1;
}
