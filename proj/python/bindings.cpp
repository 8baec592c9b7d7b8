#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "grnevo/experiment.hpp"
#include "grnevo/fitness.hpp"
#include "grnevo/network_io.hpp"

namespace py = pybind11;
using namespace grnevo;

namespace {

InitialState make_state(const GrnParameters& params, const std::optional<Eigen::VectorXd>& mrna,
                        const std::optional<Eigen::VectorXd>& protein, double level)
{
    InitialState init = InitialState::uniform(params.gene_count(), level);
    if (mrna) {
        init.mrna = *mrna;
    }
    if (protein) {
        init.protein = *protein;
    }
    if (init.mrna.size() != params.gene_count() || init.protein.size() != params.gene_count()) {
        throw std::invalid_argument("initial state length must equal the gene count");
    }
    return init;
}

py::dict result_dict(const RunResult& r)
{
    py::dict d;
    d["problem"] = r.problem;
    d["method"] = to_string(r.method);
    d["density"] = to_string(r.density);
    d["seed"] = r.seed;
    d["genotype"] = r.genotype.values;
    d["network"] = py::cast(network_document(r.network));
    d["raw"] = r.raw;
    d["raw_before_postprocess"] = r.raw_evolved;
    d["interactions"] = r.interactions;
    d["interactions_before_postprocess"] = r.interactions_evolved;
    d["evolved_nodes"] = r.nodes;
    d["evolved_nodes_before_postprocess"] = r.nodes_evolved;
    d["evaluations"] = r.evaluations;
    d["generations"] = r.generations;
    d["behavior_generation"] = r.behavior_generation;
    d["restarts"] = r.restarts;
    d["robustness"] = r.robustness;
    d["success"] = r.success;
    py::list history;
    for (const auto& h : r.history) {
        py::dict row;
        row["generation"] = h.generation;
        row["evaluations"] = h.evaluations;
        row["best_raw"] = h.best_raw;
        row["best_penalty"] = h.best_penalty;
        row["best_total"] = h.best_total;
        row["interactions"] = h.interactions;
        row["strategy"] = to_string(h.strategy);
        history.append(row);
    }
    d["history"] = history;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Core bindings for grnevo";

    py::register_exception<IntegrationError>(m, "IntegrationError", PyExc_RuntimeError);
    py::register_exception<DocumentError>(m, "DocumentError", PyExc_ValueError);

    py::class_<NetworkDocument>(m, "Network")
        .def_readonly("gene_names", &NetworkDocument::gene_names)
        .def_property_readonly("hill", [](const NetworkDocument& d) { return d.params.hill; })
        .def_property_readonly("binding", [](const NetworkDocument& d) { return d.params.binding; })
        .def_property_readonly("promoter", [](const NetworkDocument& d) { return d.params.promoter; })
        .def_property_readonly("translation", [](const NetworkDocument& d) { return d.params.translation; })
        .def_property_readonly("basal", [](const NetworkDocument& d) { return d.params.basal; })
        .def_property_readonly("gene_count", [](const NetworkDocument& d) { return d.params.gene_count(); })
        .def_property_readonly("interaction_count",
                               [](const NetworkDocument& d) { return d.params.interaction_count(); })
        .def("to_json", &network_to_json)
        .def_static(
            "from_json", [](const std::string& text) { return network_from_json(text); }, py::arg("text"))
        .def("__repr__", [](const NetworkDocument& d) {
            return "<Network genes=" + std::to_string(d.params.gene_count())
                + " interactions=" + std::to_string(d.params.interaction_count()) + ">";
        });

    m.def("load_network", &load_network, py::arg("path"), "Read a network JSON file.");

    m.def(
        "simulate",
        [](const NetworkDocument& net, int duration, std::optional<Eigen::VectorXd> mrna,
           std::optional<Eigen::VectorXd> protein, double level) {
            const auto trace = simulate(net.params, make_state(net.params, mrna, protein, level), duration);
            py::dict d;
            d["t"] = Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(trace.times.data(), static_cast<Eigen::Index>(trace.times.size())));
            d["mrna"] = trace.mrna;
            d["protein"] = trace.protein;
            return d;
        },
        py::arg("network"), py::arg("duration") = 100, py::arg("mrna") = py::none(), py::arg("protein") = py::none(),
        py::arg("level") = 1.0,
        "Integrate the network and return unit-spaced samples as arrays t, mrna, protein.");

    m.def(
        "autocorrelation",
        [](const std::vector<double>& series, int max_lag) { return autocorrelation(series, max_lag); },
        py::arg("series"), py::arg("max_lag") = kAutocorrelationMaxLag);
    m.def(
        "autocorr_metric",
        [](const std::vector<double>& series, int max_lag) { return autocorr_metric(series, max_lag); },
        py::arg("series"), py::arg("max_lag") = kAutocorrelationMaxLag,
        "Oscillation score: about -9 for a clean periodic series, 0 for flat ones.");
    m.def(
        "penalty", [](int generation, double divisor, double magnitude) { return penalty(generation, divisor, magnitude); },
        py::arg("generation"), py::arg("divisor"), py::arg("hill_magnitude"));
    m.def(
        "bistable_raw",
        [](const NetworkDocument& net, int target, double level, int duration) {
            return bistable_raw(net.params, target, InitialState::uniform(net.params.gene_count(), level), duration);
        },
        py::arg("network"), py::arg("target"), py::arg("level") = 1.0, py::arg("duration") = 50);
    m.def(
        "oscillator_raw",
        [](const NetworkDocument& net, int target, std::optional<Eigen::VectorXd> mrna,
           std::optional<Eigen::VectorXd> protein, double level, int duration) {
            return oscillator_raw(net.params, target, make_state(net.params, mrna, protein, level), duration);
        },
        py::arg("network"), py::arg("target"), py::arg("mrna") = py::none(), py::arg("protein") = py::none(),
        py::arg("level") = 1.0, py::arg("duration") = 100);

    py::class_<ProblemSpec>(m, "Problem")
        .def(py::init([](const std::string& name) { return resolve_problem(name); }), py::arg("name"),
             "Built-in problem name or path to a problem file.")
        .def_readonly("name", &ProblemSpec::name)
        .def_readonly("threshold", &ProblemSpec::threshold)
        .def_readonly("penalty_divisor", &ProblemSpec::penalty_divisor)
        .def_readonly("target_gene", &ProblemSpec::target_gene)
        .def_readonly("gene_names", &ProblemSpec::gene_names)
        .def_property_readonly("kind", [](const ProblemSpec& p) { return to_string(p.kind); })
        .def_property_readonly("gene_count", [](const ProblemSpec& p) { return p.model->gene_count(); })
        .def_property_readonly("genotype_length", [](const ProblemSpec& p) { return p.model->genotype_length(); })
        .def(
            "raw",
            [](const ProblemSpec& p, const NetworkDocument& net, std::uint64_t seed, bool robustness) {
                return problem_raw(p, net.params, seed, robustness ? InitMode::Robustness : InitMode::Evolution);
            },
            py::arg("network"), py::arg("seed") = 0, py::arg("robustness") = false)
        .def(
            "robustness",
            [](const ProblemSpec& p, const NetworkDocument& net, std::uint64_t seed, int replicates) {
                return robustness_test(p, net.params, seed, replicates);
            },
            py::arg("network"), py::arg("seed") = 0, py::arg("replicates") = 100)
        .def("__repr__", [](const ProblemSpec& p) {
            return "<Problem " + p.name + " genes=" + std::to_string(p.model->gene_count())
                + " M=" + std::to_string(p.model->genotype_length()) + ">";
        });

    m.def(
        "run_trial",
        [](const ProblemSpec& problem, const std::string& method, const std::string& density, std::uint64_t seed,
           int workers) {
            TrialSettings settings = TrialSettings::defaults(problem, method_from_string(method));
            settings.workers = workers;
            RunResult r;
            {
                py::gil_scoped_release release;
                r = run_trial(problem, settings, density_from_string(density), seed);
            }
            return result_dict(r);
        },
        py::arg("problem"), py::arg("method") = "forced-reduction", py::arg("density") = "dense", py::arg("seed") = 0,
        py::arg("workers") = 1, "Run one trial and return its result as a dict.");
}
