#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "dtsolve/model.hpp"
#include "dtsolve/reductions.hpp"
#include "dtsolve/solver.hpp"
#include "dtsolve/tree.hpp"

namespace dtsolve {

// CI-CSV: header line of feature names followed by the literal `label`,
// then one row per example (one integer per feature, then `+` or `-`).
// Lines starting with `#` are comments; blank lines are skipped. The
// generators prepend `# budget objective=<size|depth> k=<k> t=<t>`.

ClassificationInstance parse_instance(std::istream& in);
ClassificationInstance parse_instance(const std::string& text);
ClassificationInstance load_instance(const std::string& path);

void write_instance(std::ostream& out, const ClassificationInstance& instance,
                    const std::optional<Budget>& budget = std::nullopt);
std::string instance_to_csv(const ClassificationInstance& instance,
                            const std::optional<Budget>& budget = std::nullopt);

/// First `# budget ...` comment in the stream, if any.
std::optional<Budget> read_budget_comment(std::istream& in);
std::optional<Budget> read_budget_comment_from_file(const std::string& path);

// Tree-JSON: {"leaf":"+"} / {"leaf":"-"} or
// {"test":{"feature":"<name>","threshold":<int>,"le":<node>,"gt":<node>}}.
// Features are referenced by name, so (de)serialization needs the feature
// list of the instance the tree belongs to.

std::string tree_to_json(const DecisionTree& tree,
                         const std::vector<std::string>& feature_names);
DecisionTree tree_from_json(const std::string& text,
                            const std::vector<std::string>& feature_names);

// Graph file: `n m` then m lines `u v`, 0-indexed.
Graph parse_graph(std::istream& in);
Graph load_graph(const std::string& path);

// Set-system file: `|U| |F| k` then one line of element indices per set.
SetSystem parse_set_system(std::istream& in);
SetSystem load_set_system(const std::string& path);

} // namespace dtsolve
