#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dtsolve/errors.hpp"
#include "dtsolve/io.hpp"
#include "dtsolve/model.hpp"
#include "dtsolve/preprocess.hpp"
#include "dtsolve/reductions.hpp"
#include "dtsolve/solver.hpp"
#include "dtsolve/support_sets.hpp"
#include "dtsolve/tree.hpp"

namespace py = pybind11;

namespace {

using namespace dtsolve;

Label label_from_string(const std::string& s) {
    if (s == "+") return Label::positive;
    if (s == "-") return Label::negative;
    throw usage_error("label must be '+' or '-'");
}

std::string label_to_string(Label l) { return std::string(1, label_char(l)); }

Objective objective_from_string(const std::string& s) {
    auto obj = objective_from_name(s);
    if (!obj) throw usage_error("objective must be 'size' or 'depth'");
    return *obj;
}

ClassificationInstance make_instance(const std::vector<std::string>& feature_names,
                                     const std::vector<std::vector<Value>>& values,
                                     const std::vector<std::string>& labels) {
    if (values.size() != labels.size()) {
        throw usage_error("values and labels must have the same length");
    }
    std::vector<Example> examples;
    examples.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        examples.push_back(Example{values[i], label_from_string(labels[i])});
    }
    return ClassificationInstance(feature_names, std::move(examples));
}

SolveOptions make_options(int threads, std::uint64_t node_cap,
                          const std::optional<std::vector<std::uint64_t>>& weights) {
    SolveOptions options;
    options.threads = threads;
    options.node_cap = node_cap;
    options.weights = weights;
    return options;
}

py::object bigint_to_py(const BigInt& value) {
    const std::string digits = value.str();
    PyObject* obj = PyLong_FromString(digits.c_str(), nullptr, 10);
    if (!obj) throw py::error_already_set();
    return py::reinterpret_steal<py::object>(obj);
}

} // namespace

PYBIND11_MODULE(dtsolve, m) {
    m.doc() = "exact bounded decision trees with an outlier budget";

    py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);
    py::register_exception<usage_error>(m, "UsageError", PyExc_ValueError);
    py::register_exception<resource_limit_error>(m, "ResourceLimitError", PyExc_RuntimeError);

    py::class_<ClassificationInstance>(m, "ClassificationInstance")
        .def(py::init(&make_instance), py::arg("feature_names"), py::arg("values"),
             py::arg("labels"))
        .def_property_readonly("feature_names", &ClassificationInstance::feature_names)
        .def_property_readonly("num_features", &ClassificationInstance::num_features)
        .def_property_readonly("num_examples", &ClassificationInstance::num_examples)
        .def_property_readonly("num_positive", &ClassificationInstance::num_positive)
        .def_property_readonly("num_negative", &ClassificationInstance::num_negative)
        .def("values",
             [](const ClassificationInstance& e, std::size_t i) { return e.example(i).values; },
             py::arg("i"))
        .def("label",
             [](const ClassificationInstance& e, std::size_t i) {
                 return label_to_string(e.example(i).label);
             },
             py::arg("i"))
        .def("domain", &ClassificationInstance::domain, py::arg("feature"))
        .def("to_csv",
             [](const ClassificationInstance& e) { return instance_to_csv(e, std::nullopt); })
        .def_static("from_csv",
                    [](const std::string& text) { return parse_instance(text); },
                    py::arg("text"))
        .def("__len__", &ClassificationInstance::num_examples)
        .def("__eq__", [](const ClassificationInstance& a, const ClassificationInstance& b) {
            return a == b;
        });

    py::class_<InstanceStats>(m, "InstanceStats")
        .def_readonly("num_examples", &InstanceStats::num_examples)
        .def_readonly("num_features", &InstanceStats::num_features)
        .def_readonly("delta_max", &InstanceStats::delta_max)
        .def_readonly("d_max", &InstanceStats::d_max)
        .def_readonly("num_positive", &InstanceStats::num_positive)
        .def_readonly("num_negative", &InstanceStats::num_negative);

    py::class_<DecisionTree>(m, "DecisionTree")
        .def_property_readonly("size", &tree_size)
        .def_property_readonly("depth", &tree_depth)
        .def("classify",
             [](const DecisionTree& tree, const std::vector<Value>& values) {
                 return label_to_string(classify(tree, Example{values, Label::negative}));
             },
             py::arg("values"))
        .def("to_json",
             [](const DecisionTree& tree, const ClassificationInstance& instance) {
                 return tree_to_json(tree, instance.feature_names());
             },
             py::arg("instance"))
        .def_static("from_json",
                    [](const std::string& text, const ClassificationInstance& instance) {
                        return tree_from_json(text, instance.feature_names());
                    },
                    py::arg("text"), py::arg("instance"))
        .def("__eq__",
             [](const DecisionTree& a, const DecisionTree& b) { return a == b; });

    m.def("compute_stats", &compute_stats, py::arg("instance"));
    m.def("delta_max", py::overload_cast<const ClassificationInstance&>(&delta_max),
          py::arg("instance"));
    m.def("d_max", py::overload_cast<const ClassificationInstance&>(&d_max),
          py::arg("instance"));
    m.def("disagreement_set",
          [](const ClassificationInstance& instance, std::size_t i, std::size_t j) {
              return disagreement_set(instance.example(i), instance.example(j));
          },
          py::arg("instance"), py::arg("i"), py::arg("j"));
    m.def("examples_matching_assignment",
          [](const ClassificationInstance& instance,
             const std::map<std::size_t, Value>& alpha) {
              Assignment a(alpha.begin(), alpha.end());
              return examples_matching_assignment(instance, a);
          },
          py::arg("instance"), py::arg("assignment"));
    m.def("outliers", &outliers, py::arg("tree"), py::arg("instance"));
    m.def("normalize", &normalize, py::arg("tree"), py::arg("instance"));

    m.def("outlier_cost", &outlier_cost, py::arg("features"), py::arg("instance"));
    m.def("is_support_set", &is_support_set, py::arg("features"), py::arg("instance"));
    m.def("enum_minimal_support_sets",
          [](const ClassificationInstance& instance, std::size_t k) {
              return enum_minimal_support_sets(instance, k);
          },
          py::arg("instance"), py::arg("k"));

    py::class_<SupportSetReport>(m, "SupportSetReport")
        .def_readonly("features", &SupportSetReport::features)
        .def_readonly("outlier_cost", &SupportSetReport::outlier_cost)
        .def_readonly("minimal", &SupportSetReport::minimal);
    m.def("enum_minimal_support_sets_outliers",
          [](const ClassificationInstance& instance, std::size_t k, std::uint64_t t) {
              return enum_minimal_support_sets_outliers(instance, k, t);
          },
          py::arg("instance"), py::arg("k"), py::arg("t"));

    py::class_<SolveResult>(m, "SolveResult")
        .def_readonly("feasible", &SolveResult::feasible)
        .def_readonly("tree", &SolveResult::tree)
        .def_readonly("size", &SolveResult::achieved_size)
        .def_readonly("depth", &SolveResult::achieved_depth)
        .def_readonly("outliers", &SolveResult::achieved_outliers)
        .def_readonly("nodes_explored", &SolveResult::nodes_explored);

    m.def("solve",
          [](const ClassificationInstance& instance, const std::string& objective,
             std::size_t k, std::uint64_t t, int threads, std::uint64_t node_cap,
             const std::optional<std::vector<std::uint64_t>>& weights) {
              return solve(instance, Budget{objective_from_string(objective), k, t},
                           make_options(threads, node_cap, weights));
          },
          py::arg("instance"), py::arg("objective"), py::arg("k"), py::arg("t"),
          py::arg("threads") = 1, py::arg("node_cap") = 100'000'000ull,
          py::arg("weights") = std::nullopt);
    m.def("min_cost",
          [](const ClassificationInstance& instance, const std::string& objective,
             std::uint64_t t, int threads, std::uint64_t node_cap,
             const std::optional<std::vector<std::uint64_t>>& weights) {
              return min_cost(instance, objective_from_string(objective), t,
                              make_options(threads, node_cap, weights));
          },
          py::arg("instance"), py::arg("objective"), py::arg("t"), py::arg("threads") = 1,
          py::arg("node_cap") = 100'000'000ull, py::arg("weights") = std::nullopt);
    m.def("oracle_solve",
          [](const ClassificationInstance& instance, const std::string& objective,
             std::size_t k, std::uint64_t t, std::uint64_t node_cap) {
              return oracle_solve(instance, Budget{objective_from_string(objective), k, t},
                                  node_cap);
          },
          py::arg("instance"), py::arg("objective"), py::arg("k"), py::arg("t"),
          py::arg("node_cap") = 2'000'000'000ull);
    m.def("support_feasibility",
          [](const ClassificationInstance& instance, std::size_t k, std::uint64_t t,
             const std::string& objective) {
              return support_feasibility(instance, k, t, objective_from_string(objective));
          },
          py::arg("instance"), py::arg("k"), py::arg("t"), py::arg("objective"));

    py::class_<Graph>(m, "Graph")
        .def(py::init<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>>(),
             py::arg("n"), py::arg("edges"))
        .def_readonly("n", &Graph::n)
        .def_readonly("edges", &Graph::edges)
        .def_property_readonly("m", &Graph::m);

    py::class_<SetSystem>(m, "SetSystem")
        .def(py::init<std::size_t, std::vector<std::vector<std::size_t>>, std::size_t>(),
             py::arg("universe_size"), py::arg("sets"), py::arg("k"))
        .def_readonly("universe_size", &SetSystem::universe_size)
        .def_readonly("sets", &SetSystem::sets)
        .def_readonly("k", &SetSystem::k);

    m.def("hs_to_ci", &hs_to_ci, py::arg("system"));
    m.def("hs_to_ci_complement", &hs_to_ci_complement, py::arg("system"));
    m.def("sc_to_ci", &sc_to_ci, py::arg("system"));

    py::class_<BlockRange>(m, "BlockRange")
        .def_readonly("begin", &BlockRange::begin)
        .def_readonly("end", &BlockRange::end);

    py::class_<PvcReduction>(m, "PvcReduction")
        .def_readonly("instance", &PvcReduction::instance)
        .def_readonly("s", &PvcReduction::s)
        .def_readonly("d", &PvcReduction::d)
        .def_readonly("t", &PvcReduction::t)
        .def_readonly("eta", &PvcReduction::eta)
        .def_readonly("ell", &PvcReduction::ell)
        .def_readonly("blocks", &PvcReduction::blocks)
        .def_readonly("hit_map", &PvcReduction::hit_map);
    m.def("pvc_to_dt_instance",
          [](const Graph& graph, std::size_t k, std::size_t p, const std::string& objective) {
              return pvc_to_dt_instance(graph, k, p, objective_from_string(objective));
          },
          py::arg("graph"), py::arg("k"), py::arg("p"), py::arg("objective"));

    py::class_<AndComposition>(m, "AndComposition")
        .def_readonly("instance", &AndComposition::instance)
        .def_readonly("depth_budget", &AndComposition::depth_budget)
        .def_readonly("num_blocks", &AndComposition::num_blocks);
    m.def("and_composition", &and_composition, py::arg("graphs"), py::arg("k"));
    m.def("split_graph", &split_graph, py::arg("n"), py::arg("k"));

    m.def("brute_pvc", &brute_pvc, py::arg("graph"), py::arg("k"), py::arg("p"));
    m.def("brute_vc", &brute_vc, py::arg("graph"), py::arg("k"));
    m.def("brute_hs", &brute_hs, py::arg("system"));
    m.def("brute_sc", &brute_sc, py::arg("system"));
    m.def("random_instance", &random_instance, py::arg("seed"), py::arg("num_features"),
          py::arg("num_examples"), py::arg("dmax"));

    py::class_<DedupReport>(m, "DedupReport")
        .def_readonly("kept", &DedupReport::kept)
        .def_readonly("multiplicities", &DedupReport::multiplicities)
        .def_readonly("contradictions", &DedupReport::contradictions);
    m.def("dedup", &dedup, py::arg("instance"));
    m.def("trivial_kernel_bound",
          [](std::size_t num_features, std::size_t delta, std::size_t dmax) {
              return bigint_to_py(trivial_kernel_bound(num_features, delta, dmax));
          },
          py::arg("num_features"), py::arg("delta_max"), py::arg("d_max"));
}
