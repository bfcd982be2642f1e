// dtsolve: exact learning of size- or depth-bounded decision trees that may
// misclassify at most t examples, plus the instance generators and checking
// tools around it.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dtsolve/errors.hpp"
#include "dtsolve/io.hpp"
#include "dtsolve/preprocess.hpp"
#include "dtsolve/reductions.hpp"
#include "dtsolve/solver.hpp"
#include "dtsolve/support_sets.hpp"
#include "dtsolve/tree.hpp"

namespace {

constexpr int kExitFeasible = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResourceCap = 3;

struct BudgetFlags {
    std::string objective;
    std::int64_t k = -1;
    std::int64_t t = -1;
};

// Flags win; a `# budget ...` comment in the input file fills the gaps.
dtsolve::Budget resolve_budget(const BudgetFlags& flags, const std::string& input_path) {
    std::optional<dtsolve::Budget> sidecar =
        dtsolve::read_budget_comment_from_file(input_path);
    dtsolve::Budget budget;
    if (!flags.objective.empty()) {
        auto obj = dtsolve::objective_from_name(flags.objective);
        if (!obj) throw dtsolve::usage_error("objective must be 'size' or 'depth'");
        budget.objective = *obj;
    } else if (sidecar) {
        budget.objective = sidecar->objective;
    } else {
        throw dtsolve::usage_error("--objective required (no budget comment in input)");
    }
    if (flags.k >= 0) {
        budget.k = static_cast<std::size_t>(flags.k);
    } else if (sidecar) {
        budget.k = sidecar->k;
    } else {
        throw dtsolve::usage_error("--k required (no budget comment in input)");
    }
    if (flags.t >= 0) {
        budget.t = static_cast<std::uint64_t>(flags.t);
    } else if (sidecar) {
        budget.t = sidecar->t;
    } else {
        throw dtsolve::usage_error("--t required (no budget comment in input)");
    }
    return budget;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw dtsolve::usage_error("cannot write file: " + path);
    out << content;
}

int report_solve(const dtsolve::ClassificationInstance& instance,
                 const dtsolve::SolveResult& result, const std::string& emit_tree) {
    if (!result.feasible) {
        std::cout << "infeasible\n";
        return kExitInfeasible;
    }
    std::cout << "feasible outliers=" << result.achieved_outliers
              << " size=" << result.achieved_size << " depth=" << result.achieved_depth
              << "\n";
    if (!emit_tree.empty()) {
        write_output(emit_tree, dtsolve::tree_to_json(*result.tree, instance.feature_names()));
    }
    return kExitFeasible;
}

int run_solve(const std::string& input, const BudgetFlags& flags, const std::string& emit_tree,
              int threads, std::uint64_t node_cap, bool oracle) {
    auto instance = dtsolve::load_instance(input);
    auto budget = resolve_budget(flags, input);
    dtsolve::SolveResult result;
    if (oracle) {
        result = dtsolve::oracle_solve(instance, budget, node_cap);
    } else {
        dtsolve::SolveOptions options;
        options.threads = threads;
        options.node_cap = node_cap;
        result = dtsolve::solve(instance, budget, options);
    }
    return report_solve(instance, result, emit_tree);
}

int run_enum_ss(const std::string& input, std::size_t k, std::uint64_t t) {
    auto instance = dtsolve::load_instance(input);
    for (const auto& report : dtsolve::enum_minimal_support_sets_outliers(instance, k, t)) {
        std::string line;
        for (std::size_t i = 0; i < report.features.size(); ++i) {
            if (i) line += ",";
            line += instance.feature_name(report.features[i]);
        }
        if (!line.empty()) line += " ";
        std::cout << line << "cost=" << report.outlier_cost << "\n";
    }
    return kExitFeasible;
}

int run_verify(const std::string& tree_path, const std::string& input, std::uint64_t t) {
    auto instance = dtsolve::load_instance(input);
    std::ifstream in(tree_path);
    if (!in) throw dtsolve::usage_error("cannot open file: " + tree_path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto tree = dtsolve::tree_from_json(text, instance.feature_names());
    const std::uint64_t outs = dtsolve::outliers(tree, instance).size();
    std::cout << "outliers=" << outs << " size=" << dtsolve::tree_size(tree)
              << " depth=" << dtsolve::tree_depth(tree) << "\n";
    return outs <= t ? kExitFeasible : kExitInfeasible;
}

int run_stats(const std::string& input) {
    auto instance = dtsolve::load_instance(input);
    auto stats = dtsolve::compute_stats(instance);
    auto report = dtsolve::dedup(instance);
    dtsolve::BigInt bound = 0;
    if (stats.delta_max <= stats.num_features) {
        bound = dtsolve::trivial_kernel_bound(stats.num_features, stats.delta_max, stats.d_max);
    }
    std::cout << "examples=" << stats.num_examples << " features=" << stats.num_features
              << " delta_max=" << stats.delta_max << " d_max=" << stats.d_max
              << " kernel_bound=" << bound.str() << " contradictions=" << report.contradictions
              << "\n";
    return kExitFeasible;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact bounded decision trees with an outlier budget"};
    app.require_subcommand(1);

    // solve / oracle
    struct SolveArgs {
        std::string input, emit_tree;
        BudgetFlags budget;
        int threads = 1;
        std::uint64_t node_cap = 100'000'000;
    };
    SolveArgs solve_args, oracle_args;
    auto add_solve_flags = [](CLI::App* cmd, SolveArgs& args) {
        cmd->add_option("--input", args.input, "instance in CI-CSV format")->required();
        cmd->add_option("--objective", args.budget.objective, "size or depth");
        cmd->add_option("--k", args.budget.k, "structural budget");
        cmd->add_option("--t", args.budget.t, "outlier budget");
        cmd->add_option("--emit-tree", args.emit_tree, "write the witness as Tree-JSON");
        cmd->add_option("--threads", args.threads, "solver worker threads");
        cmd->add_option("--node-cap", args.node_cap, "abort after this many search nodes");
    };
    add_solve_flags(app.add_subcommand("solve", "decide feasibility and emit a witness"),
                    solve_args);
    add_solve_flags(
        app.add_subcommand("oracle", "exhaustive reference search (small instances only)"),
        oracle_args);

    // enum-ss
    std::string enum_input;
    std::int64_t enum_k = 0, enum_t = 0;
    auto* enum_cmd = app.add_subcommand("enum-ss", "enumerate minimal support sets");
    enum_cmd->add_option("--input", enum_input, "instance in CI-CSV format")->required();
    enum_cmd->add_option("--k", enum_k, "maximum set size")->required();
    enum_cmd->add_option("--t", enum_t, "outlier budget")->required();

    // gen
    auto* gen = app.add_subcommand("gen", "generate instances");
    gen->require_subcommand(1);
    std::string gen_output;
    gen->add_option("--output", gen_output, "output path (default stdout)");

    std::string gen_system_input;
    auto* gen_hs = gen->add_subcommand("hs", "hitting-set instance -> CI");
    auto* gen_hsc = gen->add_subcommand("hsc", "hitting-set instance -> complemented CI");
    auto* gen_sc = gen->add_subcommand("sc", "set-cover instance -> CI");
    for (auto* cmd : {gen_hs, gen_hsc, gen_sc}) {
        cmd->add_option("--input", gen_system_input, "set-system file")->required();
    }

    std::string gen_graph;
    std::int64_t gen_k = 0, gen_p = 0;
    std::string gen_objective = "size";
    auto* gen_pvc = gen->add_subcommand("pvc", "partial-vertex-cover instance -> CI");
    gen_pvc->add_option("--graph", gen_graph, "graph file")->required();
    gen_pvc->add_option("--k", gen_k, "cover size budget")->required();
    gen_pvc->add_option("--p", gen_p, "edges to cover")->required();
    gen_pvc->add_option("--objective", gen_objective, "size or depth")->required();

    std::vector<std::string> gen_graphs;
    std::int64_t andcomp_k = 0;
    auto* gen_and = gen->add_subcommand("andcomp", "vertex-cover instances -> one CI");
    gen_and->add_option("--graph", gen_graphs, "graph file (repeatable)")->required();
    gen_and->add_option("--k", andcomp_k, "shared cover budget")->required();

    std::uint64_t rand_seed = 0;
    std::int64_t rand_features = 4, rand_examples = 10, rand_dmax = 2;
    auto* gen_random = gen->add_subcommand("random", "seeded random CI");
    gen_random->add_option("--seed", rand_seed, "generator seed");
    gen_random->add_option("--features", rand_features, "number of features");
    gen_random->add_option("--examples", rand_examples, "number of examples");
    gen_random->add_option("--dmax", rand_dmax, "values per feature");

    // verify
    std::string verify_tree, verify_input;
    std::int64_t verify_t = 0;
    auto* verify_cmd = app.add_subcommand("verify", "re-check a Tree-JSON witness");
    verify_cmd->add_option("--tree", verify_tree, "Tree-JSON file")->required();
    verify_cmd->add_option("--input", verify_input, "instance in CI-CSV format")->required();
    verify_cmd->add_option("--t", verify_t, "outlier budget")->required();

    // stats
    std::string stats_input;
    auto* stats_cmd = app.add_subcommand("stats", "instance statistics");
    stats_cmd->add_option("--input", stats_input, "instance in CI-CSV format")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand("solve")) {
            return run_solve(solve_args.input, solve_args.budget, solve_args.emit_tree,
                             solve_args.threads, solve_args.node_cap, false);
        }
        if (app.got_subcommand("oracle")) {
            return run_solve(oracle_args.input, oracle_args.budget, oracle_args.emit_tree,
                             oracle_args.threads, oracle_args.node_cap, true);
        }
        if (app.got_subcommand("enum-ss")) {
            if (enum_k < 0 || enum_t < 0) {
                throw dtsolve::usage_error("--k and --t must be nonnegative");
            }
            return run_enum_ss(enum_input, static_cast<std::size_t>(enum_k),
                               static_cast<std::uint64_t>(enum_t));
        }
        if (app.got_subcommand("gen")) {
            std::optional<dtsolve::Budget> budget;
            std::optional<dtsolve::ClassificationInstance> instance;
            if (gen->got_subcommand("hs")) {
                auto system = dtsolve::load_set_system(gen_system_input);
                instance = dtsolve::hs_to_ci(system);
                budget = dtsolve::Budget{dtsolve::Objective::depth, system.k, 0};
            } else if (gen->got_subcommand("hsc")) {
                auto system = dtsolve::load_set_system(gen_system_input);
                instance = dtsolve::hs_to_ci_complement(system);
                budget = dtsolve::Budget{dtsolve::Objective::size, system.k, 0};
            } else if (gen->got_subcommand("sc")) {
                auto system = dtsolve::load_set_system(gen_system_input);
                instance = dtsolve::sc_to_ci(system);
                budget = dtsolve::Budget{dtsolve::Objective::depth, system.k, 0};
            } else if (gen->got_subcommand("pvc")) {
                if (gen_k < 0 || gen_p < 0) {
                    throw dtsolve::usage_error("--k and --p must be nonnegative");
                }
                auto obj = dtsolve::objective_from_name(gen_objective);
                if (!obj) throw dtsolve::usage_error("objective must be 'size' or 'depth'");
                auto reduction = dtsolve::pvc_to_dt_instance(
                    dtsolve::load_graph(gen_graph), static_cast<std::size_t>(gen_k),
                    static_cast<std::size_t>(gen_p), *obj);
                budget = dtsolve::Budget{
                    *obj, *obj == dtsolve::Objective::size ? reduction.s : reduction.d,
                    reduction.t};
                instance = std::move(reduction.instance);
            } else if (gen->got_subcommand("andcomp")) {
                if (andcomp_k < 0) throw dtsolve::usage_error("--k must be nonnegative");
                std::vector<dtsolve::Graph> graphs;
                for (const auto& path : gen_graphs) graphs.push_back(dtsolve::load_graph(path));
                auto composed =
                    dtsolve::and_composition(graphs, static_cast<std::size_t>(andcomp_k));
                budget = dtsolve::Budget{dtsolve::Objective::depth, composed.depth_budget, 0};
                instance = std::move(composed.instance);
            } else if (gen->got_subcommand("random")) {
                if (rand_features < 0 || rand_examples < 0 || rand_dmax < 1) {
                    throw dtsolve::usage_error("invalid random-instance parameters");
                }
                instance = dtsolve::random_instance(rand_seed,
                                                    static_cast<std::size_t>(rand_features),
                                                    static_cast<std::size_t>(rand_examples),
                                                    static_cast<std::size_t>(rand_dmax));
            }
            write_output(gen_output, dtsolve::instance_to_csv(*instance, budget));
            return kExitFeasible;
        }
        if (app.got_subcommand("verify")) {
            if (verify_t < 0) throw dtsolve::usage_error("--t must be nonnegative");
            return run_verify(verify_tree, verify_input,
                              static_cast<std::uint64_t>(verify_t));
        }
        if (app.got_subcommand("stats")) {
            return run_stats(stats_input);
        }
    } catch (const dtsolve::resource_limit_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResourceCap;
    } catch (const dtsolve::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const dtsolve::usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
