#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>

#include "treering/digest.hpp"
#include "treering/explorer.hpp"
#include "treering/json_io.hpp"
#include "treering/protocol.hpp"
#include "treering/semantics.hpp"
#include "treering/tree.hpp"
#include "treering/verify.hpp"
#include "treering/version.hpp"

namespace py = pybind11;
using namespace treering;

namespace {

py::object json_to_py(const ordered_json& j) {
    switch (j.type()) {
        case nlohmann::detail::value_t::null: return py::none();
        case nlohmann::detail::value_t::boolean: return py::bool_(j.get<bool>());
        case nlohmann::detail::value_t::number_integer: return py::int_(j.get<std::int64_t>());
        case nlohmann::detail::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
        case nlohmann::detail::value_t::number_float: return py::float_(j.get<double>());
        case nlohmann::detail::value_t::string: return py::str(j.get<std::string>());
        case nlohmann::detail::value_t::array: {
            py::list out;
            for (const auto& item : j) out.append(json_to_py(item));
            return out;
        }
        case nlohmann::detail::value_t::object: {
            py::dict out;
            for (const auto& [key, value] : j.items()) out[py::str(key)] = json_to_py(value);
            return out;
        }
        default: return py::none();
    }
}

TreeFormat format_from_string(const std::string& name) {
    if (name == "auto") return TreeFormat::Auto;
    if (name == "triples") return TreeFormat::Triples;
    if (name == "json") return TreeFormat::AdjacencyJson;
    throw py::value_error("unknown tree format '" + name + "'");
}

Variant variant_from_string(const std::string& name) {
    auto variant = variant_from_name(name);
    if (!variant) throw py::value_error("unknown variant '" + name + "'");
    return *variant;
}

std::vector<CheckKind> checks_from_strings(const std::vector<std::string>& names, Variant variant) {
    std::vector<CheckKind> out;
    for (const std::string& name : names) {
        if (name == "all") {
            out = all_checks_for(variant);
        } else if (name == "A") {
            out.push_back(CheckKind::InvariantA);
        } else if (name == "B") {
            out.push_back(CheckKind::InvariantB);
        } else if (name == "weight") {
            out.push_back(CheckKind::WeightDecrease);
        } else {
            throw py::value_error("unknown check '" + name + "'");
        }
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_treering, m) {
    m.doc() = "Simulator, exhaustive explorer and verification harness for a self-stabilising "
              "tree-to-ring construction protocol";
    m.attr("__version__") = kVersion;

    py::register_exception<ParseError>(m, "TreeParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "TreeValidationError", PyExc_ValueError);

    py::class_<Tree, std::shared_ptr<Tree>>(m, "Tree")
        .def_property_readonly("n", &Tree::node_count)
        .def_property_readonly("root", [](const Tree& t) { return t.label(t.root()); })
        .def_property_readonly("labels",
                               [](const Tree& t) {
                                   std::vector<std::string> out;
                                   for (NodeId v = 0; v < t.node_count(); ++v) out.push_back(t.label(v));
                                   return out;
                               })
        .def_property_readonly("leaf_count", &Tree::leaf_count)
        .def("depth",
             [](const Tree& t, const std::string& label) {
                 auto v = t.find(label);
                 if (!v) throw py::value_error("unknown node '" + label + "'");
                 return t.depth(*v);
             })
        .def("parent",
             [](const Tree& t, const std::string& label) -> py::object {
                 auto v = t.find(label);
                 if (!v) throw py::value_error("unknown node '" + label + "'");
                 NodeId p = t.parent(*v);
                 return p == kFake ? py::object(py::none()) : py::object(py::str(t.label(p)));
             })
        .def("children",
             [](const Tree& t, const std::string& label) {
                 auto v = t.find(label);
                 if (!v) throw py::value_error("unknown node '" + label + "'");
                 std::vector<std::string> out;
                 for (NodeId c : t.children(*v)) out.push_back(t.label(c));
                 return out;
             })
        .def("preorder",
             [](const Tree& t) {
                 std::vector<std::string> out;
                 for (NodeId v : t.preorder()) out.push_back(t.label(v));
                 return out;
             })
        .def("dfs_ring",
             [](const Tree& t) {
                 py::dict out;
                 auto succ = dfs_ring_oracle(t);
                 for (NodeId v = 0; v < t.node_count(); ++v) out[py::str(t.label(v))] = t.label(succ[v]);
                 return out;
             })
        .def("triples_text", &Tree::to_triples_text)
        .def("digest", [](const Tree& t) { return hex64(t.digest()); })
        .def("__repr__", [](const Tree& t) {
            return "<Tree n=" + std::to_string(t.node_count()) + " root=" + t.label(t.root()) + ">";
        });

    m.def(
        "parse_tree",
        [](const std::string& text, const std::string& format) {
            return std::make_shared<Tree>(parse_tree(text, format_from_string(format)));
        },
        py::arg("text"), py::arg("format") = "auto");

    m.def(
        "validate_triples_text",
        [](const std::string& text) { return validate_triples(parse_triples_text(text)).violations; },
        py::arg("text"), "Parse triple text and return the list of structural violations (empty when valid)");

    m.def(
        "enumerate_topologies",
        [](int n) {
            std::vector<std::shared_ptr<Tree>> out;
            enumerate_topologies(n, [&out](const Tree& t) { out.push_back(std::make_shared<Tree>(t)); });
            return out;
        },
        py::arg("n"));

    m.def("catalan", &catalan, py::arg("k"));

    m.def(
        "run",
        [](std::shared_ptr<Tree> tree, const std::string& variant, const std::string& policy, std::uint64_t seed,
           std::optional<std::uint64_t> init_random_seed, bool full_trace) {
            Variant v = variant_from_string(variant);
            auto parsed = SchedulerPolicy::parse(policy, seed);
            if (!parsed) throw py::value_error("unknown policy '" + policy + "'");
            std::optional<SeedState> seed_state;
            if (init_random_seed) {
                if (v != Variant::original)
                    throw py::value_error("init_random_seed is only admitted for variant original");
                seed_state = random_seed_state(*tree, *init_random_seed);
            }
            Trace trace = run_to_quiescence(tree, v, {*parsed, full_trace}, seed_state);
            RingReport ring = check_terminal(trace.final_config, *tree, v);
            MessageStats stats = message_stats(trace);

            ordered_json body;
            body["variant"] = variant_name(v);
            body["policy"] = {{"kind", parsed->name()}, {"seed", parsed->seed}};
            body["steps"] = trace.steps.size();
            body["initial_weight"] = weight_to_json(weight(trace.initial, *tree, v));
            body["final"] = config_to_json(trace.final_config, *tree);
            body["ring_report"] = ring_report_to_json(ring);
            body["message_stats"] = message_stats_to_json(stats);
            if (full_trace) {
                body["trace"] = ordered_json::array();
                for (const TraceStep& step : trace.steps) body["trace"].push_back(trace_step_to_json(step, *tree));
            }
            return json_to_py(body);
        },
        py::arg("tree"), py::arg("variant") = "simplified", py::arg("policy") = "lexicographic", py::arg("seed") = 0,
        py::arg("init_random_seed") = std::nullopt, py::arg("full_trace") = false);

    m.def(
        "explore",
        [](std::shared_ptr<Tree> tree, const std::string& variant, const std::vector<std::string>& checks,
           std::optional<std::uint64_t> bound, bool por) {
            Variant v = variant_from_string(variant);
            ExploreOptions options;
            options.checks = checks_from_strings(checks, v);
            options.state_bound = bound;
            options.reduced = por;
            ExplorationReport report = explore(*tree, v, options);
            ordered_json body = exploration_report_to_json(report, *tree);
            ordered_json terminal_reports = ordered_json::array();
            if (!report.bound_exceeded)
                for (const Configuration& terminal : report.terminals)
                    terminal_reports.push_back(ring_report_to_json(check_terminal(terminal, *tree, v)));
            body["terminal_reports"] = terminal_reports;
            return json_to_py(body);
        },
        py::arg("tree"), py::arg("variant") = "simplified", py::arg("checks") = std::vector<std::string>{},
        py::arg("bound") = std::nullopt, py::arg("por") = false);

    m.def(
        "stats",
        [](std::shared_ptr<Tree> tree) {
            ordered_json body;
            ordered_json variants = ordered_json::object();
            std::uint64_t m1 = 0, m2 = 0, m3 = 0;
            for (Variant v : {Variant::original, Variant::succ, Variant::pred}) {
                Trace trace = run_to_quiescence(tree, v, {});
                MessageStats stats = message_stats(trace);
                variants[variant_name(v)] = message_stats_to_json(stats);
                (v == Variant::original ? m1 : v == Variant::succ ? m2 : m3) = stats.total();
            }
            std::uint64_t leaves = tree->leaf_count(), inner = tree->node_count() - leaves;
            body["n"] = tree->node_count();
            body["leaves"] = leaves;
            body["variants"] = variants;
            body["m1"] = m1;
            body["m2"] = m2;
            body["m3"] = m3;
            body["recommendation"] = leaves > inner ? "pred" : (inner > leaves ? "succ" : "tie");
            return json_to_py(body);
        },
        py::arg("tree"));
}
