#include "dtsolve/io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string_view>

#include "json.hpp"

#include "dtsolve/errors.hpp"

namespace dtsolve {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    return s;
}

bool is_comment(std::string_view s) { return !s.empty() && s.front() == '#'; }

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

Value parse_int(std::string_view token, std::size_t line) {
    token = trim(token);
    Value v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw parse_error("expected integer, got '" + std::string(token) + "'", line);
    }
    return v;
}

std::optional<Budget> parse_budget_comment(std::string_view line_text) {
    // # budget objective=<size|depth> k=<k> t=<t>
    auto s = trim(line_text);
    if (!is_comment(s)) return std::nullopt;
    s.remove_prefix(1);
    std::istringstream in{std::string(s)};
    std::string word;
    if (!(in >> word) || word != "budget") return std::nullopt;
    Budget budget;
    bool have_obj = false, have_k = false, have_t = false;
    while (in >> word) {
        auto eq = word.find('=');
        if (eq == std::string::npos) return std::nullopt;
        std::string key = word.substr(0, eq);
        std::string val = word.substr(eq + 1);
        if (key == "objective") {
            auto obj = objective_from_name(val);
            if (!obj) return std::nullopt;
            budget.objective = *obj;
            have_obj = true;
        } else if (key == "k") {
            budget.k = static_cast<std::size_t>(std::stoull(val));
            have_k = true;
        } else if (key == "t") {
            budget.t = std::stoull(val);
            have_t = true;
        }
    }
    if (have_obj && have_k && have_t) return budget;
    return std::nullopt;
}

} // namespace

std::optional<Objective> objective_from_name(std::string_view name) {
    if (name == "size") return Objective::size;
    if (name == "depth") return Objective::depth;
    return std::nullopt;
}

ClassificationInstance parse_instance(std::istream& in) {
    std::string raw;
    std::size_t line_no = 0;
    std::vector<std::string> names;
    bool have_header = false;
    std::vector<Example> examples;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty() || is_comment(line)) continue;
        auto fields = split(line, ',');
        if (!have_header) {
            if (trim(fields.back()) != "label") {
                throw parse_error("header must end with 'label'", line_no);
            }
            for (std::size_t j = 0; j + 1 < fields.size(); ++j) {
                auto name = trim(fields[j]);
                if (name.empty()) throw parse_error("empty feature name", line_no);
                names.emplace_back(name);
            }
            have_header = true;
            continue;
        }
        if (fields.size() != names.size() + 1) {
            throw parse_error("expected " + std::to_string(names.size() + 1) +
                                  " fields, got " + std::to_string(fields.size()),
                              line_no);
        }
        Example e;
        e.values.reserve(names.size());
        for (std::size_t j = 0; j < names.size(); ++j) {
            e.values.push_back(parse_int(fields[j], line_no));
        }
        auto label = trim(fields.back());
        if (label == "+") {
            e.label = Label::positive;
        } else if (label == "-") {
            e.label = Label::negative;
        } else {
            throw parse_error("unknown label '" + std::string(label) + "'", line_no);
        }
        examples.push_back(std::move(e));
    }
    if (!have_header) throw parse_error("missing header line", line_no);
    try {
        return ClassificationInstance(std::move(names), std::move(examples));
    } catch (const usage_error& err) {
        throw parse_error(err.what());
    }
}

ClassificationInstance parse_instance(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

ClassificationInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file: " + path);
    return parse_instance(in);
}

void write_instance(std::ostream& out, const ClassificationInstance& instance,
                    const std::optional<Budget>& budget) {
    if (budget) {
        out << "# budget objective=" << objective_name(budget->objective) << " k=" << budget->k
            << " t=" << budget->t << "\n";
    }
    for (const auto& name : instance.feature_names()) out << name << ",";
    out << "label\n";
    for (const auto& e : instance.examples()) {
        for (Value v : e.values) out << v << ",";
        out << label_char(e.label) << "\n";
    }
}

std::string instance_to_csv(const ClassificationInstance& instance,
                            const std::optional<Budget>& budget) {
    std::ostringstream out;
    write_instance(out, instance, budget);
    return out.str();
}

std::optional<Budget> read_budget_comment(std::istream& in) {
    std::string raw;
    while (std::getline(in, raw)) {
        auto line = trim(raw);
        if (line.empty()) continue;
        if (!is_comment(line)) return std::nullopt;  // comments precede data
        if (auto b = parse_budget_comment(line)) return b;
    }
    return std::nullopt;
}

std::optional<Budget> read_budget_comment_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file: " + path);
    return read_budget_comment(in);
}

namespace {

json node_to_json(const TreeNode& node, const std::vector<std::string>& names) {
    if (node.is_leaf()) {
        return json{{"leaf", std::string(1, label_char(node.leaf_label))}};
    }
    if (node.feature >= names.size()) {
        throw usage_error("tree tests feature index out of range for feature list");
    }
    return json{{"test",
                 {{"feature", names[node.feature]},
                  {"threshold", node.threshold},
                  {"le", node_to_json(*node.le, names)},
                  {"gt", node_to_json(*node.gt, names)}}}};
}

DecisionTree node_from_json(const json& j, const std::vector<std::string>& names) {
    if (!j.is_object()) throw parse_error("tree node must be a JSON object");
    if (j.contains("leaf")) {
        const auto& label = j.at("leaf");
        if (label == "+") return DecisionTree::leaf(Label::positive);
        if (label == "-") return DecisionTree::leaf(Label::negative);
        throw parse_error("leaf label must be \"+\" or \"-\"");
    }
    if (!j.contains("test")) throw parse_error("tree node must have 'leaf' or 'test'");
    const auto& t = j.at("test");
    if (!t.is_object() || !t.contains("feature") || !t.contains("threshold") ||
        !t.contains("le") || !t.contains("gt")) {
        throw parse_error("test node requires feature, threshold, le, gt");
    }
    const auto& fname = t.at("feature");
    if (!fname.is_string()) throw parse_error("test feature must be a string");
    std::size_t index = names.size();
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == fname.get<std::string>()) {
            index = i;
            break;
        }
    }
    if (index == names.size()) {
        throw parse_error("unknown feature '" + fname.get<std::string>() + "'");
    }
    if (!t.at("threshold").is_number_integer()) {
        throw parse_error("test threshold must be an integer");
    }
    return DecisionTree::test(index, t.at("threshold").get<Value>(),
                              node_from_json(t.at("le"), names),
                              node_from_json(t.at("gt"), names));
}

} // namespace

std::string tree_to_json(const DecisionTree& tree, const std::vector<std::string>& names) {
    return node_to_json(tree.root(), names).dump(2) + "\n";
}

DecisionTree tree_from_json(const std::string& text, const std::vector<std::string>& names) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw parse_error("invalid JSON");
    return node_from_json(j, names);
}

Graph parse_graph(std::istream& in) {
    std::size_t n = 0, m = 0;
    if (!(in >> n >> m)) throw parse_error("graph file must start with 'n m'");
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    edges.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t u = 0, v = 0;
        if (!(in >> u >> v)) {
            throw parse_error("expected " + std::to_string(m) + " edges, got " +
                              std::to_string(i));
        }
        edges.emplace_back(u, v);
    }
    try {
        return Graph(n, std::move(edges));
    } catch (const usage_error& err) {
        throw parse_error(err.what());
    }
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file: " + path);
    return parse_graph(in);
}

SetSystem parse_set_system(std::istream& in) {
    std::size_t universe = 0, count = 0, k = 0;
    std::string header;
    if (!std::getline(in, header)) throw parse_error("set-system file is empty");
    {
        std::istringstream hs{header};
        if (!(hs >> universe >> count >> k)) {
            throw parse_error("set-system file must start with '|U| |F| k'", 1);
        }
    }
    std::vector<std::vector<std::size_t>> sets;
    std::string raw;
    std::size_t line_no = 1;
    while (sets.size() < count && std::getline(in, raw)) {
        ++line_no;
        auto line = trim(raw);
        if (line.empty() || is_comment(line)) continue;
        std::istringstream ls{std::string(line)};
        std::vector<std::size_t> set;
        std::size_t element = 0;
        while (ls >> element) set.push_back(element);
        if (!ls.eof()) throw parse_error("expected element indices", line_no);
        sets.push_back(std::move(set));
    }
    if (sets.size() != count) {
        throw parse_error("expected " + std::to_string(count) + " sets, got " +
                          std::to_string(sets.size()));
    }
    try {
        return SetSystem(universe, std::move(sets), k);
    } catch (const usage_error& err) {
        throw parse_error(err.what());
    }
}

SetSystem load_set_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file: " + path);
    return parse_set_system(in);
}

} // namespace dtsolve
