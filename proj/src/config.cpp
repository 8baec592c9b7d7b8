#include "grnevo/config.hpp"

#include <algorithm>
#include <cstdlib>

#include "grnevo/json_reader.hpp"

namespace grnevo {

using detail::JsonNode;
using nlohmann::json;

namespace {

template <typename T>
struct Field {
    const char* key;
    std::optional<T> Overrides::*member;
};

constexpr Field<double> kRealFields[] = {
    {"rtol", &Overrides::rtol},
    {"atol", &Overrides::atol},
    {"threshold", &Overrides::threshold},
    {"penalty_divisor", &Overrides::penalty_divisor},
    {"crossover_rate", &Overrides::crossover_rate},
    {"f_before", &Overrides::f_before},
    {"f_after", &Overrides::f_after},
    {"step_tolerance", &Overrides::step_tolerance},
    {"global_tolerance", &Overrides::global_tolerance},
    {"truncation_threshold", &Overrides::truncation_threshold},
};

constexpr Field<int> kIntegerFields[] = {
    {"duration", &Overrides::duration},
    {"popsize", &Overrides::popsize},
    {"popsize_after", &Overrides::popsize_after},
    {"max_restarts", &Overrides::max_restarts},
    {"max_generations", &Overrides::max_generations},
    {"stall_generations", &Overrides::stall_generations},
    {"max_zeroed_per_pass", &Overrides::max_zeroed_per_pass},
    {"robustness_replicates", &Overrides::robustness_replicates},
};

template <typename T, typename Parse>
std::vector<T> read_names(const JsonNode& node, Parse parse)
{
    auto one = [&](const JsonNode& n) {
        try {
            return parse(n.string());
        }
        catch (const std::invalid_argument& e) {
            n.fail(e.what());
        }
    };
    std::vector<T> out;
    if (node.value().is_array()) {
        for (std::size_t k = 0; k < node.array_size(); ++k) {
            out.push_back(one(node.at(k)));
        }
        if (out.empty()) {
            node.fail("list must not be empty");
        }
    }
    else {
        out.push_back(one(node));
    }
    return out;
}

std::vector<SlotBlock> read_blocks(const JsonNode& node)
{
    std::vector<SlotBlock> blocks;
    for (std::size_t k = 0; k < node.array_size(); ++k) {
        const JsonNode b = node.at(k);
        b.only_keys({"from", "to"});
        SlotBlock block;
        for (const char* key : {"from", "to"}) {
            const JsonNode list = b.at(key);
            auto& target = std::string(key) == "from" ? block.from : block.to;
            for (std::size_t i = 0; i < list.array_size(); ++i) {
                target.push_back(list.at(i).integer());
            }
        }
        blocks.push_back(std::move(block));
    }
    return blocks;
}

json blocks_json(const std::vector<SlotBlock>& blocks)
{
    json out = json::array();
    for (const auto& b : blocks) {
        out.push_back({{"from", b.from}, {"to", b.to}});
    }
    return out;
}

Overrides read_overrides(const JsonNode& node)
{
    std::vector<const char*> keys{"rand_to_best", "forbidden", "opened"};
    for (const auto& f : kRealFields) {
        keys.push_back(f.key);
    }
    for (const auto& f : kIntegerFields) {
        keys.push_back(f.key);
    }
    if (!node.value().is_object()) {
        node.fail("expected an object");
    }
    for (const auto& item : node.value().items()) {
        if (std::find_if(keys.begin(), keys.end(), [&](const char* k) { return item.key() == k; }) == keys.end()) {
            node.at(item.key()).fail("unknown key '" + item.key() + "'");
        }
    }

    Overrides o;
    for (const auto& f : kRealFields) {
        if (node.has(f.key)) {
            o.*f.member = node.at(f.key).number();
        }
    }
    for (const auto& f : kIntegerFields) {
        if (node.has(f.key)) {
            o.*f.member = node.at(f.key).integer();
        }
    }
    if (node.has("rand_to_best")) {
        const JsonNode n = node.at("rand_to_best");
        try {
            o.rand_to_best = rand_to_best_form_from_string(n.string());
        }
        catch (const std::invalid_argument& e) {
            n.fail(e.what());
        }
    }
    if (node.has("forbidden")) {
        o.forbidden = read_blocks(node.at("forbidden"));
    }
    if (node.has("opened")) {
        o.opened = read_blocks(node.at("opened"));
    }
    return o;
}

json overrides_json(const Overrides& o)
{
    json out = json::object();
    for (const auto& f : kRealFields) {
        if (o.*f.member) {
            out[f.key] = *(o.*f.member);
        }
    }
    for (const auto& f : kIntegerFields) {
        if (o.*f.member) {
            out[f.key] = *(o.*f.member);
        }
    }
    if (o.rand_to_best) {
        out["rand_to_best"] = to_string(*o.rand_to_best);
    }
    if (o.forbidden) {
        out["forbidden"] = blocks_json(*o.forbidden);
    }
    if (o.opened) {
        out["opened"] = blocks_json(*o.opened);
    }
    return out;
}

} // namespace

ExperimentConfig ExperimentConfig::full_campaign()
{
    ExperimentConfig c;
    c.problems = {"bistable", "oscillator", "conditional-oscillator", "dual-oscillator"};
    c.methods = {Method::ForcedReduction, Method::NoPenalty, Method::Penalty};
    c.densities = {Density::Dense, Density::Medium, Density::Sparse};
    c.repetitions = 25;
    return c;
}

std::filesystem::path ExperimentConfig::resolved_output_dir() const
{
    if (!output_dir.empty()) {
        return output_dir;
    }
    if (const char* env = std::getenv("GRNEVO_OUTPUT_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return "grnevo-output";
}

std::size_t ExperimentConfig::trial_count() const
{
    return problems.size() * methods.size() * densities.size() * static_cast<std::size_t>(std::max(repetitions, 0));
}

void ExperimentConfig::validate() const
{
    if (problems.empty() || methods.empty() || densities.empty()) {
        throw std::invalid_argument("config needs at least one problem, method and density");
    }
    if (repetitions < 1) {
        throw std::invalid_argument("repetitions must be at least 1");
    }
    if (workers < 1) {
        throw std::invalid_argument("workers must be at least 1");
    }
}

ExperimentConfig config_from_json(const std::string& text, const std::string& source)
{
    const json root_value = detail::parse_document(text, source);
    const JsonNode root(root_value, "", source);
    root.only_keys({"problem", "method", "density", "repetitions", "seed", "output_dir", "workers", "overrides"});

    ExperimentConfig c;
    if (root.has("problem")) {
        c.problems = read_names<std::string>(root.at("problem"), [](const std::string& s) { return s; });
    }
    if (root.has("method")) {
        c.methods = read_names<Method>(root.at("method"), method_from_string);
    }
    if (root.has("density")) {
        c.densities = read_names<Density>(root.at("density"), density_from_string);
    }
    if (root.has("repetitions")) {
        const JsonNode n = root.at("repetitions");
        c.repetitions = n.integer();
        if (c.repetitions < 1) {
            n.fail("must be at least 1");
        }
    }
    if (root.has("seed")) {
        c.seed = root.at("seed").unsigned_integer();
    }
    if (root.has("output_dir")) {
        c.output_dir = root.at("output_dir").string();
    }
    if (root.has("workers")) {
        const JsonNode n = root.at("workers");
        c.workers = n.integer();
        if (c.workers < 1) {
            n.fail("must be at least 1");
        }
    }
    if (root.has("overrides")) {
        c.overrides = read_overrides(root.at("overrides"));
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    return config_from_json(detail::read_text_file(path), path.string());
}

std::string config_to_json(const ExperimentConfig& config)
{
    json out;
    out["problem"] = config.problems;
    json methods = json::array();
    for (const auto m : config.methods) {
        methods.push_back(to_string(m));
    }
    out["method"] = methods;
    json densities = json::array();
    for (const auto d : config.densities) {
        densities.push_back(to_string(d));
    }
    out["density"] = densities;
    out["repetitions"] = config.repetitions;
    out["seed"] = config.seed;
    out["output_dir"] = config.resolved_output_dir().string();
    out["workers"] = config.workers;
    out["overrides"] = overrides_json(config.overrides);
    return out.dump(2) + "\n";
}

ProblemSpec apply_overrides(ProblemSpec problem, const Overrides& o)
{
    if (o.rtol) {
        problem.integrator.rtol = *o.rtol;
    }
    if (o.atol) {
        problem.integrator.atol = *o.atol;
    }
    if (o.threshold) {
        problem.threshold = *o.threshold;
    }
    if (o.penalty_divisor) {
        problem.penalty_divisor = *o.penalty_divisor;
    }
    if (o.duration) {
        problem.duration = *o.duration;
    }
    if (o.popsize) {
        problem.popsize = *o.popsize;
        if (!o.popsize_after) {
            problem.popsize_after = std::min(problem.popsize_after, problem.popsize);
        }
    }
    if (o.popsize_after) {
        problem.popsize_after = *o.popsize_after;
    }
    if (o.forbidden || o.opened) {
        if (o.forbidden) {
            problem.forbidden = *o.forbidden;
        }
        if (o.opened) {
            problem.opened = *o.opened;
        }
        rebuild_model(problem);
    }
    problem.validate();
    return problem;
}

TrialSettings trial_settings(const ProblemSpec& problem, Method method, const Overrides& o)
{
    TrialSettings s = TrialSettings::defaults(problem, method);
    auto set = [](auto& target, const auto& value) {
        if (value) {
            target = *value;
        }
    };
    set(s.de.crossover_rate, o.crossover_rate);
    set(s.de.f_before, o.f_before);
    set(s.de.f_after, o.f_after);
    set(s.de.max_restarts, o.max_restarts);
    set(s.de.rand_to_best, o.rand_to_best);
    set(s.max_generations, o.max_generations);
    set(s.stall_generations, o.stall_generations);
    set(s.method.step_tolerance, o.step_tolerance);
    set(s.method.global_tolerance, o.global_tolerance);
    set(s.method.max_zeroed_per_pass, o.max_zeroed_per_pass);
    set(s.method.truncation_threshold, o.truncation_threshold);
    set(s.robustness_replicates, o.robustness_replicates);
    s.validate();
    return s;
}

} // namespace grnevo
