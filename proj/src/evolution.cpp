#include "grnevo/evolution.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "grnevo/format.hpp"

namespace grnevo {

std::string to_string(Strategy strategy)
{
    return strategy == Strategy::Rand1 ? "rand1" : "rand-to-best1";
}

std::string to_string(RandToBestForm form)
{
    return form == RandToBestForm::Verbatim ? "verbatim" : "canonical";
}

RandToBestForm rand_to_best_form_from_string(const std::string& name)
{
    if (name == "verbatim") {
        return RandToBestForm::Verbatim;
    }
    if (name == "canonical") {
        return RandToBestForm::Canonical;
    }
    throw std::invalid_argument("unknown rand-to-best form '" + name + "' (expected verbatim or canonical)");
}

void DeConfig::validate() const
{
    if (popsize < 4) {
        throw std::invalid_argument("popsize must be at least 4");
    }
    if (popsize_after < 4 || popsize_after > popsize) {
        throw std::invalid_argument("popsize_after must be in [4, popsize]");
    }
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
        throw std::invalid_argument("crossover_rate must be in [0, 1]");
    }
    if (!(f_before > 0.0) || !(f_after > 0.0)) {
        throw std::invalid_argument("mutation factors must be positive");
    }
    if (max_restarts < 0 || stagnation_for_restart < 1) {
        throw std::invalid_argument("restart settings out of range");
    }
}

Genotype rand1_vector(const Genotype& x1, const Genotype& x2, const Genotype& x3, double f)
{
    if (x1.size() != x2.size() || x1.size() != x3.size()) {
        throw std::invalid_argument("mutation operands differ in length");
    }
    Genotype v = x1;
    for (std::size_t k = 0; k < v.size(); ++k) {
        v.values[k] += f * (x2.values[k] - x3.values[k]);
    }
    return v;
}

Genotype rand_to_best_vector(const Genotype& best, const Genotype& x1, const Genotype& x2, const Genotype& x3,
                             double f, RandToBestForm form)
{
    if (best.size() != x1.size() || x1.size() != x2.size() || x1.size() != x3.size()) {
        throw std::invalid_argument("mutation operands differ in length");
    }
    Genotype v;
    v.values.resize(x1.size());
    const double base = form == RandToBestForm::Canonical ? 1.0 : 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        v.values[k] = base * x1.values[k] + f * (best.values[k] - x1.values[k]) + f * (x2.values[k] - x3.values[k]);
    }
    return v;
}

Genotype mutate_rand1(const GrnModel& model, const Genotype& x1, const Genotype& x2, const Genotype& x3, double f)
{
    return model.clamp_bounds(rand1_vector(x1, x2, x3, f));
}

Genotype mutate_rand_to_best(const GrnModel& model, const Genotype& best, const Genotype& x1, const Genotype& x2,
                             const Genotype& x3, double f, RandToBestForm form)
{
    return model.clamp_bounds(rand_to_best_vector(best, x1, x2, x3, f, form));
}

Genotype crossover_bin(const Genotype& target, const Genotype& mutant, double cr, Rng& rng)
{
    if (target.size() != mutant.size()) {
        throw std::invalid_argument("crossover operands differ in length");
    }
    Genotype trial = target;
    if (trial.size() == 0) {
        return trial;
    }
    const std::size_t forced = rng.index(trial.size());
    for (std::size_t k = 0; k < trial.size(); ++k) {
        if (rng.uniform() < cr || k == forced) {
            trial.values[k] = mutant.values[k];
        }
    }
    return trial;
}

std::array<std::size_t, 3> pick_three(std::size_t n, std::size_t exclude, Rng& rng)
{
    if (n < 4) {
        throw std::invalid_argument("need at least 4 members to pick three others");
    }
    std::array<std::size_t, 3> picks{};
    for (std::size_t k = 0; k < 3; ++k) {
        std::size_t r = 0;
        do {
            r = rng.index(n);
        } while (r == exclude || std::find(picks.begin(), picks.begin() + static_cast<std::ptrdiff_t>(k), r)
                                     != picks.begin() + static_cast<std::ptrdiff_t>(k));
        picks[k] = r;
    }
    return picks;
}

void write_generation_csv(std::ostream& out, const std::vector<GenerationRecord>& records)
{
    out << "generation,evaluations,best_raw,best_penalty,best_total,interactions,strategy,restarts,population\n";
    for (const auto& r : records) {
        out << r.generation << ',' << r.evaluations << ',' << format_number(r.best_raw) << ','
            << format_number(r.best_penalty) << ',' << format_number(r.best_total) << ',' << r.interactions << ','
            << to_string(r.strategy) << ',' << r.restarts << ',' << r.population << '\n';
    }
}

namespace {

// Evaluation seed phases, so that trial vectors, fresh populations and
// externally supplied members never share a substream.
constexpr std::uint64_t kTrialPhase = 0;
constexpr std::uint64_t kFreshPhase = 1;
constexpr std::uint64_t kSuppliedPhase = 2;

} // namespace

Evolution::Evolution(SearchProblem problem, DeConfig de, MethodConfig method, std::uint64_t seed, int workers)
    : problem_(std::move(problem)), de_(de), method_(method), seed_(seed), workers_(std::max(workers, 1))
{
    if (problem_.model == nullptr || !problem_.raw) {
        throw std::invalid_argument("search problem needs a model and a raw fitness function");
    }
    if (!(problem_.penalty_divisor > 0.0)) {
        throw std::invalid_argument("penalty divisor must be positive");
    }
    de_.validate();
    method_.validate();
}

std::size_t Evolution::best_index() const
{
    if (population_.empty()) {
        throw std::logic_error("population is empty");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < population_.size(); ++i) {
        if (population_[i].fitness.total < population_[best].fitness.total) {
            best = i;
        }
    }
    return best;
}

void Evolution::evaluate_new(std::vector<Member>& members, std::uint64_t phase)
{
    const auto& model = *problem_.model;
    parallel_for(members.size(), workers_, [&](std::size_t i) {
        Member& m = members[i];
        m.seed = derive_seed(seed_, Stream::Evaluation,
                             {static_cast<std::uint64_t>(generation_), phase, static_cast<std::uint64_t>(i)});
        double raw = 0.0;
        try {
            raw = problem_.raw(m.genotype, m.seed);
        }
        catch (const IntegrationError&) {
            raw = 0.0;
        }
        m.fitness = score(model, method_, m.genotype, raw, generation_, problem_.penalty_divisor);
    });
    evaluations_ += static_cast<long long>(members.size());
}

void Evolution::rescore()
{
    for (Member& m : population_) {
        m.fitness = score(*problem_.model, method_, m.genotype, m.fitness.raw, generation_, problem_.penalty_divisor);
    }
}

void Evolution::fill_population(Stream stream, std::uint64_t epoch)
{
    population_.assign(static_cast<std::size_t>(de_.popsize), Member{});
    for (std::size_t i = 0; i < population_.size(); ++i) {
        Rng rng(derive_seed(seed_, stream, {epoch, static_cast<std::uint64_t>(i)}));
        population_[i].genotype = init_genotype(*problem_.model, problem_.initial_nonzero, rng);
    }
    evaluate_new(population_, kFreshPhase);
}

void Evolution::initialize()
{
    generation_ = 0;
    evaluations_ = 0;
    behavior_generation_ = -1;
    restarts_ = 0;
    stagnation_ = 0;
    has_best_ = false;
    history_.clear();
    prune_events_.clear();
    used_strategy_ = Strategy::Rand1;
    fill_population(Stream::Init, 0);
    finish_generation();
}

void Evolution::set_population(std::vector<Genotype> genotypes)
{
    if (genotypes.size() < 4) {
        throw std::invalid_argument("population needs at least 4 members");
    }
    population_.assign(genotypes.size(), Member{});
    for (std::size_t i = 0; i < genotypes.size(); ++i) {
        population_[i].genotype = problem_.model->clamp_bounds(std::move(genotypes[i]));
    }
    evaluate_new(population_, kSuppliedPhase);
    if (!history_.empty() && history_.back().generation == generation_) {
        history_.pop_back();
    }
    finish_generation();
}

void Evolution::step()
{
    if (population_.empty()) {
        throw std::logic_error("step() before initialize()");
    }
    ++generation_;
    rescore();

    const auto& model = *problem_.model;
    const std::size_t n = population_.size();
    const std::size_t best = best_index();
    const double f = mutation_factor();
    const Strategy strategy = this->strategy();
    used_strategy_ = strategy;

    std::vector<Member> trials(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng(derive_seed(seed_, Stream::Mutation, {static_cast<std::uint64_t>(generation_), i}));
        const auto [r1, r2, r3] = pick_three(n, i, rng);
        const Genotype mutant = strategy == Strategy::Rand1
            ? mutate_rand1(model, population_[r1].genotype, population_[r2].genotype, population_[r3].genotype, f)
            : mutate_rand_to_best(model, population_[best].genotype, population_[r1].genotype,
                                  population_[r2].genotype, population_[r3].genotype, f, de_.rand_to_best);
        Genotype trial = crossover_bin(population_[i].genotype, mutant, de_.crossover_rate, rng);
        if (method_.truncation_enabled) {
            truncate_small(model, trial, method_.truncation_threshold);
        }
        trials[i].genotype = std::move(trial);
    }
    evaluate_new(trials, kTrialPhase);

    for (std::size_t i = 0; i < n; ++i) {
        if (trials[i].fitness.total < population_[i].fitness.total) {
            population_[i] = std::move(trials[i]);
        }
    }
    finish_generation();
}

bool Evolution::maybe_restart()
{
    if (behavior_found() || stagnation_ < de_.stagnation_for_restart || restarts_ >= de_.max_restarts) {
        return false;
    }
    ++restarts_;
    fill_population(Stream::Restart, static_cast<std::uint64_t>(restarts_));
    if (!history_.empty() && history_.back().generation == generation_) {
        history_.pop_back();
    }
    finish_generation();
    stagnation_ = 0;
    return true;
}

void Evolution::finish_generation()
{
    if (!behavior_found()) {
        const bool found = std::any_of(population_.begin(), population_.end(),
                                       [&](const Member& m) { return m.fitness.raw < problem_.threshold; });
        if (found) {
            behavior_generation_ = generation_;
            const auto keep = static_cast<std::size_t>(de_.popsize_after);
            if (keep < population_.size()) {
                std::stable_sort(population_.begin(), population_.end(), [](const Member& a, const Member& b) {
                    return a.fitness.total < b.fitness.total;
                });
                population_.resize(keep);
            }
        }
    }

    auto events = apply_end_of_generation(population_, *problem_.model, method_, problem_.raw, behavior_found(),
                                          problem_.threshold, generation_, problem_.penalty_divisor, evaluations_,
                                          workers_);
    prune_events_.insert(prune_events_.end(), std::make_move_iterator(events.begin()),
                         std::make_move_iterator(events.end()));

    const Member& best = population_[best_index()];
    if (!has_best_ || best.fitness.total < best_ever_.fitness.total) {
        best_ever_ = best;
        has_best_ = true;
        stagnation_ = 0;
    }
    else {
        ++stagnation_;
    }

    GenerationRecord record;
    record.generation = generation_;
    record.evaluations = evaluations_;
    record.best_raw = best.fitness.raw;
    record.best_penalty = best.fitness.penalty;
    record.best_total = best.fitness.total;
    record.interactions = problem_.model->interaction_count(best.genotype);
    record.strategy = used_strategy_;
    record.restarts = restarts_;
    record.population = static_cast<int>(population_.size());
    history_.push_back(record);
}

} // namespace grnevo
