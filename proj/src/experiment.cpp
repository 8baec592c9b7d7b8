#include "grnevo/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "grnevo/fitness.hpp"
#include "grnevo/format.hpp"
#include "grnevo/json_reader.hpp"
#include "grnevo/network_io.hpp"
#include "grnevo/rng.hpp"

namespace grnevo {

using detail::JsonNode;

std::string to_string(ProblemKind kind)
{
    switch (kind) {
    case ProblemKind::Bistable: return "bistable";
    case ProblemKind::Oscillator: return "oscillator";
    case ProblemKind::ConditionalOscillator: return "conditional-oscillator";
    case ProblemKind::DualOscillator: return "dual-oscillator";
    }
    return "?";
}

ProblemKind problem_kind_from_string(const std::string& name)
{
    for (const auto kind : {ProblemKind::Bistable, ProblemKind::Oscillator, ProblemKind::ConditionalOscillator,
                            ProblemKind::DualOscillator}) {
        std::string camel;
        bool upper = true;
        for (char c : to_string(kind)) {
            if (c == '-') {
                upper = true;
                continue;
            }
            camel += upper ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c;
            upper = false;
        }
        if (name == to_string(kind) || name == camel) {
            return kind;
        }
    }
    throw std::invalid_argument("unknown problem '" + name
                                + "' (expected bistable, oscillator, conditional-oscillator or dual-oscillator)");
}

std::string to_string(Density density)
{
    switch (density) {
    case Density::Dense: return "dense";
    case Density::Medium: return "medium";
    case Density::Sparse: return "sparse";
    }
    return "?";
}

Density density_from_string(const std::string& name)
{
    if (name == "dense" || name == "Dense") {
        return Density::Dense;
    }
    if (name == "medium" || name == "Medium") {
        return Density::Medium;
    }
    if (name == "sparse" || name == "Sparse") {
        return Density::Sparse;
    }
    throw std::invalid_argument("unknown density '" + name + "' (expected dense, medium or sparse)");
}

std::vector<Slot> expand(const std::vector<SlotBlock>& blocks)
{
    std::vector<Slot> slots;
    for (const auto& block : blocks) {
        for (int j : block.from) {
            for (int i : block.to) {
                slots.push_back({j, i});
            }
        }
    }
    return slots;
}

void ProblemSpec::validate() const
{
    if (!model) {
        throw std::invalid_argument(name + ": problem has no model");
    }
    const int g = model->gene_count();
    auto gene_ok = [g](int k) { return k >= 0 && k < g; };
    if (!gene_ok(target_gene)) {
        throw std::invalid_argument(name + ": target gene out of range");
    }
    if (kind == ProblemKind::ConditionalOscillator && !gene_ok(switch_gene)) {
        throw std::invalid_argument(name + ": conditional oscillator needs a valid switch gene");
    }
    if (!std::isfinite(threshold)) {
        throw std::invalid_argument(name + ": threshold must be finite");
    }
    if (!(penalty_divisor > 0.0)) {
        throw std::invalid_argument(name + ": penalty divisor must be positive");
    }
    if (popsize < 4 || popsize_after < 4 || popsize_after > popsize) {
        throw std::invalid_argument(name + ": popsize must be >= 4 and popsize_after in [4, popsize]");
    }
    for (int d : density) {
        if (d < 0) {
            throw std::invalid_argument(name + ": density counts must be non-negative");
        }
    }
    const int min_duration = kind == ProblemKind::Bistable ? 1 : kAutocorrelationMaxLag;
    if (duration < min_duration) {
        throw std::invalid_argument(name + ": duration must be at least " + std::to_string(min_duration));
    }
    if (!(random_level_max >= 0.0)) {
        throw std::invalid_argument(name + ": random_level_max must be non-negative");
    }
    if (kind == ProblemKind::DualOscillator) {
        const auto k = static_cast<int>(oscillator_genes.size());
        if (k == 0 || oscillator_flat.gene_count() != k || oscillator_cycle.gene_count() != k) {
            throw std::invalid_argument(name + ": dual oscillator needs prepared oscillator states");
        }
        if (!std::all_of(oscillator_genes.begin(), oscillator_genes.end(), gene_ok)) {
            throw std::invalid_argument(name + ": oscillator gene out of range");
        }
    }
}

namespace {

std::vector<int> read_int_list(const JsonNode& node)
{
    std::vector<int> out;
    for (std::size_t k = 0; k < node.array_size(); ++k) {
        out.push_back(node.at(k).integer());
    }
    return out;
}

std::vector<double> read_number_list(const JsonNode& node)
{
    std::vector<double> out;
    for (std::size_t k = 0; k < node.array_size(); ++k) {
        out.push_back(node.at(k).number());
    }
    return out;
}

std::vector<SlotBlock> read_blocks(const JsonNode& node)
{
    std::vector<SlotBlock> blocks;
    for (std::size_t k = 0; k < node.array_size(); ++k) {
        const JsonNode b = node.at(k);
        b.only_keys({"from", "to"});
        blocks.push_back({read_int_list(b.at("from")), read_int_list(b.at("to"))});
    }
    return blocks;
}

Eigen::VectorXd to_vector(const std::vector<double>& v)
{
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Cycle point after a burn-in from an asymmetric start, and the steady state
// refined from the cycle's time average.
void prepare_oscillator_states(ProblemSpec& spec, const GrnParameters& oscillator, const InitialState& start,
                               int burn_in, int window)
{
    spec.oscillator_cycle = advance(oscillator, start, static_cast<double>(burn_in), spec.integrator);
    const auto trace = simulate(oscillator, spec.oscillator_cycle, window, spec.integrator);
    InitialState mean;
    mean.mrna = trace.mrna.colwise().mean().transpose();
    mean.protein = trace.protein.colwise().mean().transpose();
    spec.oscillator_flat = steady_state(oscillator, mean);
}

} // namespace

void rebuild_model(ProblemSpec& problem)
{
    problem.model = std::make_shared<const GrnModel>(compose(problem.subnetworks, problem.evolvable_genes,
                                                             expand(problem.forbidden), expand(problem.opened),
                                                             problem.basal));
}

ProblemSpec load_problem(const std::filesystem::path& path)
{
    const std::string source = path.string();
    const auto root_value = detail::parse_document(detail::read_text_file(path), source);
    const JsonNode root(root_value, "", source);
    root.only_keys({"name", "kind", "genes", "basal", "subnetworks", "evolvable_genes", "forbidden", "opened",
                    "target_gene", "switch_gene", "threshold", "penalty_divisor", "popsize", "popsize_after",
                    "density", "duration", "genotype_length", "oscillator", "random_level_max",
                    "bistable_background", "notes"});

    ProblemSpec spec;
    spec.name = root.at("name").string();
    {
        const JsonNode kind = root.at("kind");
        try {
            spec.kind = problem_kind_from_string(kind.string());
        }
        catch (const std::invalid_argument& e) {
            kind.fail(e.what());
        }
    }

    std::vector<Subnetwork> subnetworks;
    std::vector<std::string> names;
    if (root.has("subnetworks")) {
        const JsonNode list = root.at("subnetworks");
        for (std::size_t k = 0; k < list.array_size(); ++k) {
            const JsonNode entry = list.at(k);
            entry.only_keys({"network", "offset"});
            const auto file = path.parent_path() / entry.at("network").string();
            NetworkDocument doc = load_network(file);
            const int offset = entry.at("offset").integer();
            if (static_cast<int>(names.size()) < offset + doc.params.gene_count()) {
                names.resize(static_cast<std::size_t>(offset + doc.params.gene_count()));
            }
            for (int g = 0; g < doc.params.gene_count(); ++g) {
                names[static_cast<std::size_t>(offset + g)] = doc.gene_names[static_cast<std::size_t>(g)];
            }
            subnetworks.push_back({std::move(doc.params), offset});
        }
    }
    const JsonNode evolvable = root.at("evolvable_genes");
    const int evolvable_count = evolvable.integer();
    if (evolvable_count < 0) {
        evolvable.fail("must be non-negative");
    }
    if (root.has("forbidden")) {
        spec.forbidden = read_blocks(root.at("forbidden"));
    }
    if (root.has("opened")) {
        spec.opened = read_blocks(root.at("opened"));
    }
    spec.subnetworks = std::move(subnetworks);
    spec.evolvable_genes = evolvable_count;
    if (root.has("basal")) {
        spec.basal = root.at("basal").number();
    }
    try {
        rebuild_model(spec);
    }
    catch (const std::invalid_argument& e) {
        root.fail(std::string("cannot build model: ") + e.what());
    }
    const int g = spec.model->gene_count();

    if (root.has("genes")) {
        const JsonNode node = root.at("genes");
        if (node.array_size() != static_cast<std::size_t>(g)) {
            node.fail("expected " + std::to_string(g) + " gene names");
        }
        spec.gene_names.clear();
        for (std::size_t k = 0; k < node.array_size(); ++k) {
            spec.gene_names.push_back(node.at(k).string());
        }
    }
    else {
        spec.gene_names = default_gene_names(g);
        for (std::size_t k = 0; k < names.size(); ++k) {
            if (!names[k].empty()) {
                spec.gene_names[k] = names[k];
            }
        }
    }

    spec.target_gene = root.at("target_gene").integer();
    if (root.has("switch_gene")) {
        spec.switch_gene = root.at("switch_gene").integer();
    }
    spec.threshold = root.at("threshold").number();
    spec.penalty_divisor = root.at("penalty_divisor").number();
    spec.popsize = root.at("popsize").integer();
    spec.popsize_after = root.has("popsize_after") ? root.at("popsize_after").integer() : spec.popsize;
    {
        const JsonNode d = root.at("density");
        d.only_keys({"dense", "medium", "sparse"});
        spec.density = {d.at("dense").integer(), d.at("medium").integer(), d.at("sparse").integer()};
    }
    spec.duration = root.at("duration").integer();
    if (root.has("random_level_max")) {
        spec.random_level_max = root.at("random_level_max").number();
    }
    if (root.has("bistable_background")) {
        spec.bistable_background = root.at("bistable_background").number();
    }
    if (root.has("notes")) {
        spec.notes = root.at("notes").string();
    }
    if (root.has("genotype_length")) {
        const JsonNode m = root.at("genotype_length");
        if (static_cast<std::size_t>(m.integer()) != spec.model->genotype_length()) {
            m.fail("mask gives genotype length " + std::to_string(spec.model->genotype_length()) + ", file states "
                   + std::to_string(m.integer()));
        }
    }

    if (root.has("oscillator")) {
        const JsonNode osc = root.at("oscillator");
        osc.only_keys({"subnetwork", "start_mrna", "start_protein", "burn_in", "window"});
        const JsonNode index = osc.at("subnetwork");
        const int k = index.integer();
        if (k < 0 || static_cast<std::size_t>(k) >= spec.subnetworks.size()) {
            index.fail("no such subnetwork");
        }
        const auto& sub = spec.subnetworks[static_cast<std::size_t>(k)];
        const int genes = sub.params.gene_count();
        InitialState start;
        start.protein = to_vector(read_number_list(osc.at("start_protein")));
        start.mrna = osc.has("start_mrna") ? to_vector(read_number_list(osc.at("start_mrna"))) : start.protein;
        if (start.protein.size() != genes || start.mrna.size() != genes) {
            osc.fail("start state must have " + std::to_string(genes) + " entries");
        }
        spec.oscillator_genes.resize(static_cast<std::size_t>(genes));
        std::iota(spec.oscillator_genes.begin(), spec.oscillator_genes.end(), sub.offset);
        try {
            prepare_oscillator_states(spec, sub.params, start, osc.at("burn_in").integer(),
                                      osc.has("window") ? osc.at("window").integer() : spec.duration);
        }
        catch (const IntegrationError& e) {
            osc.fail(std::string("cannot prepare oscillator states: ") + e.what());
        }
    }

    try {
        spec.validate();
    }
    catch (const std::invalid_argument& e) {
        root.fail(e.what());
    }
    return spec;
}

std::filesystem::path data_directory()
{
    if (const char* env = std::getenv("GRNEVO_DATA_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return GRNEVO_DEFAULT_DATA_DIR;
}

ProblemSpec resolve_problem(const std::string& name_or_path)
{
    const std::filesystem::path as_path(name_or_path);
    if (as_path.has_extension() || name_or_path.find('/') != std::string::npos) {
        return load_problem(as_path);
    }
    const ProblemKind kind = problem_kind_from_string(name_or_path);
    const auto file = data_directory() / "problems" / (to_string(kind) + ".json");
    if (!std::filesystem::exists(file)) {
        throw std::runtime_error("built-in problem file '" + file.string()
                                 + "' not found (set GRNEVO_DATA_DIR to the data directory)");
    }
    return load_problem(file);
}

InitialState background_state(const ProblemSpec& problem, std::uint64_t seed, InitMode mode)
{
    const int g = problem.model->gene_count();
    if (problem.kind == ProblemKind::Bistable && mode == InitMode::Evolution) {
        return InitialState::uniform(g, problem.bistable_background);
    }
    Rng rng(seed);
    InitialState state = InitialState::uniform(g, 0.0);
    for (int k = 0; k < g; ++k) {
        state.mrna(k) = rng.uniform(0.0, problem.random_level_max);
    }
    for (int k = 0; k < g; ++k) {
        state.protein(k) = rng.uniform(0.0, problem.random_level_max);
    }
    return state;
}

double problem_raw(const ProblemSpec& problem, const GrnParameters& params, std::uint64_t seed, InitMode mode)
{
    const InitialState background = background_state(problem, seed, mode);
    const auto& opt = problem.integrator;
    switch (problem.kind) {
    case ProblemKind::Bistable:
        return bistable_raw(params, problem.target_gene, background, problem.duration, opt);
    case ProblemKind::Oscillator:
        return oscillator_raw(params, problem.target_gene, background, problem.duration, opt);
    case ProblemKind::ConditionalOscillator:
        return conditional_raw(params, problem.target_gene, problem.switch_gene, background, problem.duration, opt);
    case ProblemKind::DualOscillator: {
        InitialState flat = background;
        InitialState cycle = background;
        for (std::size_t k = 0; k < problem.oscillator_genes.size(); ++k) {
            const int gene = problem.oscillator_genes[k];
            const auto i = static_cast<Eigen::Index>(k);
            flat.mrna(gene) = problem.oscillator_flat.mrna(i);
            flat.protein(gene) = problem.oscillator_flat.protein(i);
            cycle.mrna(gene) = problem.oscillator_cycle.mrna(i);
            cycle.protein(gene) = problem.oscillator_cycle.protein(i);
        }
        return dual_raw(params, problem.target_gene, flat, cycle, problem.duration, opt);
    }
    }
    return 0.0;
}

RawFunction make_raw_function(const ProblemSpec& problem)
{
    return [problem](const Genotype& genotype, std::uint64_t seed) {
        return problem_raw(problem, problem.model->decode(genotype), seed, InitMode::Evolution);
    };
}

int robustness_test(const ProblemSpec& problem, const GrnParameters& params, std::uint64_t seed, int replicates)
{
    int passed = 0;
    for (int r = 0; r < replicates; ++r) {
        const auto s = derive_seed(seed, Stream::Robustness, {static_cast<std::uint64_t>(r)});
        if (problem_raw(problem, params, s, InitMode::Robustness) < problem.threshold) {
            ++passed;
        }
    }
    return passed;
}

Genotype autoregulation_postprocess(const GrnModel& model, const Genotype& genotype, double raw,
                                    const std::function<double(const Genotype&)>& raw_fn, double* raw_out,
                                    double min_improvement)
{
    Genotype current = genotype;
    double best = raw;
    const auto slots = model.evolvable_slots();
    for (std::size_t k = 0; k < slots.size(); ++k) {
        if (slots[k].source != slots[k].target) {
            continue;
        }
        for (const double value : {model.bounds().hill.lo, model.bounds().hill.hi}) {
            const std::size_t index = model.hill_offset() + k;
            if (current.values[index] == value) {
                continue;
            }
            Genotype trial = current;
            trial.values[index] = value;
            const double r = raw_fn(trial);
            if (r < best - min_improvement * std::max(1.0, std::abs(best))) {
                current = std::move(trial);
                best = r;
            }
        }
    }
    if (raw_out != nullptr) {
        *raw_out = best;
    }
    return current;
}

TrialSettings TrialSettings::defaults(const ProblemSpec& problem, Method method)
{
    TrialSettings s;
    s.method = MethodConfig::make(method);
    s.de.popsize = problem.popsize;
    s.de.popsize_after = problem.popsize_after;
    const bool forced = method == Method::ForcedReduction;
    s.max_generations = forced ? 50 : 100;
    s.stall_generations = forced ? 5 : 30;
    return s;
}

void TrialSettings::validate() const
{
    method.validate();
    de.validate();
    if (max_generations < 0 || stall_generations < 1) {
        throw std::invalid_argument("generation limits out of range");
    }
    if (robustness_replicates < 0 || success_count < 0) {
        throw std::invalid_argument("robustness settings out of range");
    }
}

RunResult run_trial(const ProblemSpec& problem, const TrialSettings& settings, Density density, std::uint64_t seed)
{
    problem.validate();
    settings.validate();
    const GrnModel& model = *problem.model;

    SearchProblem search;
    search.model = problem.model.get();
    search.raw = make_raw_function(problem);
    search.threshold = problem.threshold;
    search.penalty_divisor = problem.penalty_divisor;
    search.initial_nonzero = problem.nonzero_for(density);

    Evolution evolution(search, settings.de, settings.method, seed, settings.workers);
    evolution.initialize();

    int last_count = -1;
    int unchanged = 0;
    auto stalled = [&] {
        if (!evolution.behavior_found()) {
            return false;
        }
        const int count = evolution.history().back().interactions;
        if (count == last_count) {
            ++unchanged;
        }
        else {
            last_count = count;
            unchanged = 0;
        }
        return unchanged >= settings.stall_generations;
    };
    stalled();
    while (evolution.generation() < settings.max_generations) {
        evolution.step();
        if (stalled()) {
            break;
        }
        evolution.maybe_restart();
    }

    RunResult result;
    result.problem = problem.name;
    result.method = settings.method.method;
    result.density = density;
    result.seed = seed;

    const Member& best = evolution.population()[evolution.best_index()];
    result.evolved = best.genotype;
    result.raw_evolved = best.fitness.raw;
    long long extra = 0;
    const auto member_seed = best.seed;
    result.genotype = autoregulation_postprocess(
        model, best.genotype, best.fitness.raw,
        [&](const Genotype& g) {
            ++extra;
            return search.raw(g, member_seed);
        },
        &result.raw);
    result.network = model.decode(result.genotype);
    result.interactions_evolved = model.interaction_count(result.evolved);
    result.interactions = model.interaction_count(result.genotype);
    result.nodes_evolved = model.evolved_node_count(result.evolved);
    result.nodes = model.evolved_node_count(result.genotype);

    result.evaluations = evolution.evaluations() + extra;
    result.generations = evolution.generation();
    result.behavior_generation = evolution.behavior_generation();
    result.restarts = evolution.restarts();
    result.robustness = robustness_test(problem, result.network, derive_seed(seed, Stream::Robustness),
                                        settings.robustness_replicates);
    result.success = result.robustness >= settings.success_count;
    result.history = evolution.history();
    result.prune_events = evolution.prune_events();
    return result;
}

namespace {

std::uint64_t fnv1a(const std::string& text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h = (h ^ c) * 0x100000001b3ULL;
    }
    return h;
}

std::string slug(const std::string& text)
{
    std::string out;
    for (unsigned char c : text) {
        if (std::isalnum(c) != 0) {
            if (std::isupper(c) != 0 && !out.empty() && out.back() != '-') {
                out += '-';
            }
            out += static_cast<char>(std::tolower(c));
        }
        else if (!out.empty() && out.back() != '-') {
            out += '-';
        }
    }
    return out;
}

std::ofstream open_output(const std::filesystem::path& file)
{
    std::ofstream out(file, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + file.string() + "'");
    }
    return out;
}

} // namespace

std::string TrialPlan::id(const std::vector<ProblemSpec>& problems) const
{
    std::string rep = std::to_string(repetition);
    if (rep.size() < 2) {
        rep.insert(0, 2 - rep.size(), '0');
    }
    return slug(problems.at(problem).name) + "_" + to_string(method) + "_" + to_string(density) + "_" + rep;
}

std::uint64_t trial_seed(std::uint64_t master_seed, const std::string& problem, Method method, Density density,
                         int repetition)
{
    return derive_seed(master_seed, Stream::Trial,
                       {fnv1a(problem), static_cast<std::uint64_t>(method), static_cast<std::uint64_t>(density),
                        static_cast<std::uint64_t>(repetition)});
}

std::vector<TrialPlan> plan_campaign(const std::vector<ProblemSpec>& problems, const std::vector<Method>& methods,
                                     const std::vector<Density>& densities, int repetitions,
                                     std::uint64_t master_seed)
{
    if (repetitions < 0) {
        throw std::invalid_argument("repetitions must be non-negative");
    }
    std::vector<TrialPlan> plan;
    for (std::size_t p = 0; p < problems.size(); ++p) {
        for (const Method m : methods) {
            for (const Density d : densities) {
                for (int r = 0; r < repetitions; ++r) {
                    plan.push_back({p, m, d, r, trial_seed(master_seed, problems[p].name, m, d, r)});
                }
            }
        }
    }
    return plan;
}

std::vector<TrialRecord> run_campaign(const std::vector<ProblemSpec>& problems, const std::vector<TrialPlan>& plan,
                                      const std::function<TrialSettings(const ProblemSpec&, Method)>& settings_for,
                                      int workers, const std::function<void(const TrialRecord&)>& on_done)
{
    std::vector<TrialRecord> records(plan.size());
    std::mutex done_mutex;
    const bool single = plan.size() == 1;
    parallel_for(plan.size(), single ? 1 : workers, [&](std::size_t k) {
        TrialRecord& record = records[k];
        record.plan = plan[k];
        try {
            const ProblemSpec& problem = problems.at(plan[k].problem);
            TrialSettings settings = settings_for(problem, plan[k].method);
            settings.workers = single ? workers : 1;
            record.result = run_trial(problem, settings, plan[k].density, plan[k].seed);
        }
        catch (const std::exception& e) {
            record.error = e.what();
        }
        if (on_done) {
            const std::lock_guard lock(done_mutex);
            on_done(record);
        }
    });
    return records;
}

std::vector<CellSummary> summarize(const std::vector<ProblemSpec>& problems, const std::vector<TrialRecord>& records)
{
    std::vector<CellSummary> cells;
    std::vector<std::vector<double>> counts;
    for (const auto& record : records) {
        const auto& name = problems.at(record.plan.problem).name;
        auto it = std::find_if(cells.begin(), cells.end(), [&](const CellSummary& c) {
            return c.problem == name && c.method == record.plan.method && c.density == record.plan.density;
        });
        if (it == cells.end()) {
            cells.push_back({name, record.plan.method, record.plan.density});
            counts.emplace_back();
            it = cells.end() - 1;
        }
        const auto index = static_cast<std::size_t>(it - cells.begin());
        ++it->trials;
        if (record.result) {
            it->successes += record.result->success ? 1 : 0;
            counts[index].push_back(record.result->interactions);
        }
    }
    for (std::size_t k = 0; k < cells.size(); ++k) {
        auto& c = cells[k];
        const auto& v = counts[k];
        c.success_rate = c.trials > 0 ? static_cast<double>(c.successes) / c.trials : 0.0;
        if (!v.empty()) {
            c.mean_interactions = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        }
        if (v.size() > 1) {
            double ss = 0.0;
            for (double x : v) {
                ss += (x - c.mean_interactions) * (x - c.mean_interactions);
            }
            c.sd_interactions = std::sqrt(ss / static_cast<double>(v.size() - 1));
        }
    }
    return cells;
}

void write_trial_artifacts(const std::filesystem::path& dir, const ProblemSpec& problem, const RunResult& result)
{
    std::filesystem::create_directories(dir);
    save_network(dir / "network.json", network_document(result.network, problem.model.get(), problem.gene_names));
    {
        auto out = open_output(dir / "trace.csv");
        write_generation_csv(out, result.history);
    }
    {
        auto out = open_output(dir / "reduction_curve.csv");
        out << "evaluations,interactions\n";
        for (const auto& r : result.history) {
            out << r.evaluations << ',' << r.interactions << '\n';
        }
    }
    {
        auto out = open_output(dir / "prune_events.csv");
        out << "generation,member,zeroed,raw_before,raw_after\n";
        for (const auto& e : result.prune_events) {
            out << e.generation << ',' << e.member << ',';
            for (std::size_t k = 0; k < e.zeroed.size(); ++k) {
                out << (k > 0 ? " " : "") << e.zeroed[k].source + 1 << '>' << e.zeroed[k].target + 1;
            }
            out << ',' << format_number(e.raw_before) << ',' << format_number(e.raw_after) << '\n';
        }
    }
}

void write_campaign_tables(const std::filesystem::path& dir, const std::vector<ProblemSpec>& problems,
                           const std::vector<TrialRecord>& records)
{
    std::filesystem::create_directories(dir);
    {
        auto out = open_output(dir / "trials.csv");
        out << "trial,problem,method,density,repetition,seed,success,robustness,interactions,"
               "interactions_before_postprocess,evolved_nodes,evolved_nodes_before_postprocess,raw,"
               "raw_before_postprocess,evaluations,generations,behavior_generation,restarts,error\n";
        for (const auto& record : records) {
            const auto& p = record.plan;
            out << p.id(problems) << ',' << problems.at(p.problem).name << ',' << to_string(p.method) << ','
                << to_string(p.density) << ',' << p.repetition << ',' << p.seed << ',';
            if (record.result) {
                const auto& r = *record.result;
                out << (r.success ? 1 : 0) << ',' << r.robustness << ',' << r.interactions << ','
                    << r.interactions_evolved << ',' << r.nodes << ',' << r.nodes_evolved << ','
                    << format_number(r.raw) << ',' << format_number(r.raw_evolved) << ',' << r.evaluations << ','
                    << r.generations << ',' << r.behavior_generation << ',' << r.restarts << ',';
            }
            else {
                out << ",,,,,,,,,,,,";
            }
            std::string error = record.error;
            std::replace(error.begin(), error.end(), ',', ';');
            std::replace(error.begin(), error.end(), '\n', ' ');
            out << error << '\n';
        }
    }
    {
        auto out = open_output(dir / "summary.csv");
        out << "problem,method,density,trials,successes,success_rate,mean_interactions,sd_interactions\n";
        for (const auto& c : summarize(problems, records)) {
            out << c.problem << ',' << to_string(c.method) << ',' << to_string(c.density) << ',' << c.trials << ','
                << c.successes << ',' << format_number(c.success_rate) << ',' << format_number(c.mean_interactions)
                << ',' << format_number(c.sd_interactions) << '\n';
        }
    }
}

} // namespace grnevo
