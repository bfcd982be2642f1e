#include "dtsolve/reductions.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "dtsolve/errors.hpp"

namespace dtsolve {

namespace {

constexpr std::size_t kBruteCap = 20;

std::string indexed_name(const char* prefix, std::size_t i) {
    return std::string(prefix) + std::to_string(i);
}

std::vector<std::string> element_features(std::size_t universe_size) {
    std::vector<std::string> names;
    names.reserve(universe_size);
    for (std::size_t i = 0; i < universe_size; ++i) names.push_back(indexed_name("u", i));
    return names;
}

ClassificationInstance hs_instance(const SetSystem& system, Label dummy_label) {
    std::vector<Example> examples;
    examples.reserve(system.sets.size() + 1);
    examples.push_back(Example{std::vector<Value>(system.universe_size, 0), dummy_label});
    for (const auto& set : system.sets) {
        Example e{std::vector<Value>(system.universe_size, 0), opposite(dummy_label)};
        for (std::size_t u : set) e.values[u] = 1;
        examples.push_back(std::move(e));
    }
    return ClassificationInstance(element_features(system.universe_size),
                                  std::move(examples));
}

} // namespace

Graph::Graph(std::size_t n_, std::vector<std::pair<std::size_t, std::size_t>> edges_)
    : n(n_), edges(std::move(edges_)) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n) throw usage_error("edge endpoint out of range");
        if (u == v) throw usage_error("self-loops are not allowed");
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second) throw usage_error("duplicate edge");
    }
}

SetSystem::SetSystem(std::size_t universe_size_, std::vector<std::vector<std::size_t>> sets_,
                     std::size_t k_)
    : universe_size(universe_size_), sets(std::move(sets_)), k(k_) {
    for (auto& set : sets) {
        if (set.empty()) throw usage_error("sets must be nonempty");
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        if (set.back() >= universe_size) throw usage_error("set element out of range");
    }
}

ClassificationInstance hs_to_ci(const SetSystem& system) {
    return hs_instance(system, Label::positive);
}

ClassificationInstance hs_to_ci_complement(const SetSystem& system) {
    return hs_instance(system, Label::negative);
}

ClassificationInstance sc_to_ci(const SetSystem& system) {
    std::vector<std::string> names;
    names.reserve(system.sets.size());
    for (std::size_t j = 0; j < system.sets.size(); ++j) {
        names.push_back(indexed_name("X", j));
    }
    std::vector<Example> examples;
    examples.reserve(system.universe_size + 1);
    examples.push_back(
        Example{std::vector<Value>(system.sets.size(), 0), Label::positive});
    for (std::size_t u = 0; u < system.universe_size; ++u) {
        Example e{std::vector<Value>(system.sets.size(), 0), Label::negative};
        for (std::size_t j = 0; j < system.sets.size(); ++j) {
            if (std::binary_search(system.sets[j].begin(), system.sets[j].end(), u)) {
                e.values[j] = 1;
            }
        }
        examples.push_back(std::move(e));
    }
    return ClassificationInstance(std::move(names), std::move(examples));
}

PvcReduction pvc_to_dt_instance(const Graph& graph, std::size_t k, std::size_t p,
                                Objective objective) {
    const std::size_t m = graph.m();
    if (p > m) throw usage_error("p must not exceed the number of edges");
    if (k == 0) throw usage_error("k must be at least 1");

    const std::size_t ell = m - p;
    std::size_t eta = 0;
    if (objective == Objective::size) {
        eta = k * (ell + 2);
    } else {
        if (k >= 40) throw usage_error("depth budget too large for the reduction");
        eta = (std::size_t{1} << k) * (ell + 2);
    }
    if (m > 0 && 2 * m * eta > 50'000'000) {
        throw usage_error("reduction would generate too many examples");
    }

    std::vector<std::string> names;
    names.reserve(graph.n + 1);
    for (std::size_t v = 0; v < graph.n; ++v) names.push_back(indexed_name("v", v));
    names.push_back("d0");
    const std::size_t d0 = graph.n;

    PvcReduction out{ClassificationInstance({}, {}), k, k, static_cast<std::uint64_t>(ell) * eta,
                     eta, ell, {}, {}};
    out.hit_map.assign(graph.n, {});
    std::vector<Example> examples;
    examples.reserve(2 * m * eta);
    for (std::size_t copy = 1; copy <= eta; ++copy) {
        out.blocks.push_back(BlockRange{examples.size(), examples.size() + 2 * m});
        for (std::size_t j = 1; j <= m; ++j) {
            const auto& [u, v] = graph.edges[j - 1];
            Example edge_example{std::vector<Value>(graph.n + 1, 0), Label::negative};
            edge_example.values[u] = 1;
            edge_example.values[v] = 1;
            edge_example.values[d0] = static_cast<Value>(2 * m * (copy - 1) + 2 * j - 1);
            out.hit_map[u].push_back(examples.size());
            out.hit_map[v].push_back(examples.size());
            examples.push_back(std::move(edge_example));

            Example dummy{std::vector<Value>(graph.n + 1, 0), Label::positive};
            dummy.values[d0] = static_cast<Value>(2 * m * (copy - 1) + 2 * j);
            examples.push_back(std::move(dummy));
        }
    }
    out.instance = ClassificationInstance(std::move(names), std::move(examples));
    return out;
}

Graph split_graph(std::size_t n, std::size_t k) {
    if (k >= n) throw usage_error("split graph requires n > k");
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t u = 0; u < k; ++u) {
        for (std::size_t v = u + 1; v < k; ++v) edges.emplace_back(u, v);
    }
    for (std::size_t u = 0; u < k; ++u) {
        for (std::size_t v = k; v < n; ++v) edges.emplace_back(u, v);
    }
    Graph graph(n, std::move(edges));
    if (n <= kBruteCap) {
        // The construction relies on the filler's optimum being exactly k.
        if (!brute_vc(graph, k) || (k > 0 && brute_vc(graph, k - 1))) {
            throw usage_error("split graph does not have minimum vertex cover k");
        }
    }
    return graph;
}

AndComposition and_composition(const std::vector<Graph>& graphs, std::size_t k) {
    if (graphs.empty()) throw usage_error("and_composition requires at least one graph");
    const std::size_t n = graphs.front().n;
    for (const auto& g : graphs) {
        if (g.n != n) throw usage_error("all graphs must share the vertex count");
    }
    if (k >= n) throw usage_error("and_composition requires n > k");
    if (n > kBruteCap) throw usage_error("and_composition input too large");

    std::size_t big_n = std::bit_ceil(graphs.size());
    const Graph filler = split_graph(n, k);

    std::vector<const Graph*> inputs;
    inputs.reserve(big_n);
    for (const auto& g : graphs) inputs.push_back(&g);
    while (inputs.size() < big_n) inputs.push_back(&filler);  // known-yes padding

    std::vector<std::string> names;
    names.reserve(2 * n + 1);
    for (std::size_t j = 1; j <= 2 * n; ++j) names.push_back(indexed_name("f", j));
    names.push_back("d0");
    const std::size_t d0 = 2 * n;

    auto edge_sets = [](const Graph& g) {
        std::vector<std::vector<std::size_t>> sets;
        sets.reserve(g.m());
        for (const auto& [u, v] : g.edges) sets.push_back({u, v});
        return sets;
    };

    const ClassificationInstance complement =
        hs_to_ci_complement(SetSystem(n, edge_sets(filler), k));

    std::vector<Example> examples;
    for (std::size_t block = 1; block <= 2 * big_n; ++block) {
        if (block % 2 == 1) {
            for (const auto& e : complement.examples()) {
                Example out{std::vector<Value>(2 * n + 1, 0), e.label};
                for (std::size_t j = 0; j < n; ++j) out.values[n + j] = e.values[j];
                out.values[d0] = static_cast<Value>(block);
                examples.push_back(std::move(out));
            }
        } else {
            const Graph& g = *inputs[block / 2 - 1];
            const ClassificationInstance plain = hs_to_ci(SetSystem(n, edge_sets(g), k));
            for (const auto& e : plain.examples()) {
                Example out{std::vector<Value>(2 * n + 1, 0), e.label};
                for (std::size_t j = 0; j < n; ++j) out.values[j] = e.values[j];
                out.values[d0] = static_cast<Value>(block);
                examples.push_back(std::move(out));
            }
        }
    }

    AndComposition out{ClassificationInstance(std::move(names), std::move(examples)), 0,
                       2 * big_n};
    out.depth_budget = static_cast<std::size_t>(std::countr_zero(big_n)) + k + 1;
    return out;
}

namespace {

std::uint64_t covered_edges(const Graph& graph, std::uint32_t vertex_mask) {
    std::uint64_t covered = 0;
    for (const auto& [u, v] : graph.edges) {
        covered += ((vertex_mask >> u) & 1) || ((vertex_mask >> v) & 1);
    }
    return covered;
}

} // namespace

bool brute_pvc(const Graph& graph, std::size_t k, std::size_t p) {
    if (graph.n > kBruteCap) throw resource_limit_error("brute_pvc is capped at 20 vertices");
    if (p == 0) return true;
    const std::uint32_t limit = std::uint32_t{1} << graph.n;
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) > k) continue;
        if (covered_edges(graph, mask) >= p) return true;
    }
    return false;
}

bool brute_vc(const Graph& graph, std::size_t k) { return brute_pvc(graph, k, graph.m()); }

bool brute_hs(const SetSystem& system) {
    if (system.universe_size > kBruteCap) {
        throw resource_limit_error("brute_hs is capped at 20 elements");
    }
    const std::uint32_t limit = std::uint32_t{1} << system.universe_size;
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) > system.k) continue;
        bool hits_all = true;
        for (const auto& set : system.sets) {
            bool hit = false;
            for (std::size_t u : set) {
                if ((mask >> u) & 1) {
                    hit = true;
                    break;
                }
            }
            if (!hit) {
                hits_all = false;
                break;
            }
        }
        if (hits_all) return true;
    }
    return false;
}

bool brute_sc(const SetSystem& system) {
    if (system.sets.size() > kBruteCap) {
        throw resource_limit_error("brute_sc is capped at 20 sets");
    }
    std::uint32_t universe = 0;
    for (std::size_t u = 0; u < system.universe_size; ++u) universe |= std::uint32_t{1} << u;
    if (system.universe_size > 32) {
        throw resource_limit_error("brute_sc is capped at 32 elements");
    }
    const std::uint32_t limit = std::uint32_t{1} << system.sets.size();
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) > system.k) continue;
        std::uint32_t covered = 0;
        for (std::size_t j = 0; j < system.sets.size(); ++j) {
            if ((mask >> j) & 1) {
                for (std::size_t u : system.sets[j]) covered |= std::uint32_t{1} << u;
            }
        }
        if (covered == universe) return true;
    }
    return false;
}

namespace {

std::uint64_t mix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

ClassificationInstance random_instance(std::uint64_t seed, std::size_t num_features,
                                       std::size_t num_examples, std::size_t dmax) {
    if (dmax == 0) throw usage_error("dmax must be at least 1");
    std::uint64_t state = seed;
    std::vector<std::string> names;
    names.reserve(num_features);
    for (std::size_t f = 1; f <= num_features; ++f) names.push_back(indexed_name("f", f));
    std::vector<Example> examples;
    examples.reserve(num_examples);
    for (std::size_t i = 0; i < num_examples; ++i) {
        Example e;
        e.values.reserve(num_features);
        for (std::size_t f = 0; f < num_features; ++f) {
            e.values.push_back(static_cast<Value>(mix64(state) % dmax));
        }
        e.label = (mix64(state) & 1) ? Label::positive : Label::negative;
        examples.push_back(std::move(e));
    }
    return ClassificationInstance(std::move(names), std::move(examples));
}

} // namespace dtsolve
