#include "grnevo/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "grnevo/rng.hpp"

namespace grnevo {

MethodConfig MethodConfig::make(Method method)
{
    MethodConfig config;
    config.method = method;
    config.penalty_enabled = method != Method::NoPenalty;
    config.truncation_enabled = method != Method::ForcedReduction;
    config.pruning_enabled = method == Method::ForcedReduction;
    return config;
}

void MethodConfig::validate() const
{
    if (!(step_tolerance >= 0.0) || !(global_tolerance >= 0.0)) {
        throw std::invalid_argument("reduction tolerances must be non-negative");
    }
    if (max_zeroed_per_pass < 0) {
        throw std::invalid_argument("max_zeroed_per_pass must be non-negative");
    }
    if (!(truncation_threshold >= 0.0)) {
        throw std::invalid_argument("truncation_threshold must be non-negative");
    }
}

std::string to_string(Method method)
{
    switch (method) {
    case Method::ForcedReduction: return "forced-reduction";
    case Method::NoPenalty: return "no-penalty";
    case Method::Penalty: return "penalty";
    }
    return "?";
}

Method method_from_string(const std::string& name)
{
    if (name == "forced-reduction" || name == "ForcedReduction") {
        return Method::ForcedReduction;
    }
    if (name == "no-penalty" || name == "NoPenalty") {
        return Method::NoPenalty;
    }
    if (name == "penalty" || name == "Penalty") {
        return Method::Penalty;
    }
    throw std::invalid_argument("unknown method '" + name + "' (expected forced-reduction, no-penalty or penalty)");
}

int truncate_small(const GrnModel& model, Genotype& genotype, double threshold)
{
    if (genotype.size() != model.genotype_length()) {
        throw std::invalid_argument("genotype length does not match model");
    }
    int zeroed = 0;
    const auto slots = model.evolvable_slots().size();
    for (std::size_t k = 0; k < slots; ++k) {
        double& n = genotype.values[model.hill_offset() + k];
        if (n != 0.0 && std::abs(n) < threshold) {
            n = 0.0;
            ++zeroed;
        }
    }
    return zeroed;
}

Genotype truncated(const GrnModel& model, Genotype genotype, double threshold)
{
    truncate_small(model, genotype, threshold);
    return genotype;
}

PruneOutcome forced_reduction_pass(const GrnModel& model, const Genotype& genotype, double raw_before,
                                   const std::function<double(const Genotype&)>& raw_fn,
                                   const MethodConfig& config)
{
    if (genotype.size() != model.genotype_length()) {
        throw std::invalid_argument("genotype length does not match model");
    }
    PruneOutcome out;
    out.genotype = genotype;
    out.raw_before = raw_before;
    out.raw_after = raw_before;

    const auto slots = model.evolvable_slots();
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < slots.size(); ++k) {
        if (genotype.values[model.hill_offset() + k] != 0.0) {
            order.push_back(k);
        }
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(genotype.values[model.hill_offset() + a]) < std::abs(genotype.values[model.hill_offset() + b]);
    });

    const double global_bound = raw_before + config.global_tolerance * std::abs(raw_before);
    for (const std::size_t k : order) {
        if (static_cast<int>(out.zeroed.size()) >= config.max_zeroed_per_pass) {
            break;
        }
        Genotype trial = out.genotype;
        trial.values[model.hill_offset() + k] = 0.0;
        double raw = 0.0;
        ++out.evaluations;
        try {
            raw = raw_fn(trial);
        }
        catch (const std::exception&) {
            continue;
        }
        if (!std::isfinite(raw)) {
            continue;
        }
        const double step_bound = out.raw_after + config.step_tolerance * std::abs(out.raw_after);
        if (raw > step_bound) {
            continue;
        }
        if (raw > global_bound) {
            break;
        }
        out.genotype = std::move(trial);
        out.raw_after = raw;
        out.accepted_call = out.evaluations - 1;
        out.zeroed.push_back(slots[k]);
    }
    return out;
}

FitnessValue score(const GrnModel& model, const MethodConfig& config, const Genotype& genotype, double raw,
                   int generation, double penalty_divisor)
{
    const double p = config.penalty_enabled ? penalty(generation, penalty_divisor, model, genotype) : 0.0;
    return FitnessValue::make(raw, p);
}

std::vector<PruneEvent> apply_end_of_generation(std::vector<Member>& population, const GrnModel& model,
                                                const MethodConfig& config, const RawFunction& raw_fn,
                                                bool behavior_found, double threshold, int generation,
                                                double penalty_divisor, long long& evaluations, int workers)
{
    std::vector<PruneEvent> events;
    std::vector<long long> used(population.size(), 0);
    std::vector<PruneEvent> slot_events(population.size());
    std::vector<bool> changed(population.size(), false);

    if (config.truncation_enabled) {
        parallel_for(population.size(), workers, [&](std::size_t i) {
            Member& m = population[i];
            if (truncate_small(model, m.genotype, config.truncation_threshold) == 0) {
                return;
            }
            used[i] = 1;
            m.fitness = score(model, config, m.genotype, raw_fn(m.genotype, m.seed), generation, penalty_divisor);
        });
    }
    else if (config.pruning_enabled && behavior_found) {
        parallel_for(population.size(), workers, [&](std::size_t i) {
            Member& m = population[i];
            if (!(m.fitness.raw < threshold)) {
                return;
            }
            const std::uint64_t base = m.seed;
            const bool fresh = config.fresh_states;
            auto seed_for = [&](long long call) {
                return fresh ? derive_seed(base, Stream::Evaluation,
                                           {static_cast<std::uint64_t>(generation), static_cast<std::uint64_t>(call)})
                             : base;
            };
            double raw_before = m.fitness.raw;
            long long call = 0;
            if (fresh) {
                raw_before = raw_fn(m.genotype, seed_for(call++));
            }
            const long long first_pass_call = call;
            auto outcome = forced_reduction_pass(
                model, m.genotype, raw_before, [&](const Genotype& g) { return raw_fn(g, seed_for(call++)); },
                config);
            outcome.evaluations += first_pass_call;
            used[i] = outcome.evaluations;
            if (outcome.zeroed.empty()) {
                return;
            }
            changed[i] = true;
            slot_events[i] = {generation, static_cast<int>(i), outcome.zeroed, outcome.raw_before, outcome.raw_after};
            m.genotype = std::move(outcome.genotype);
            m.seed = seed_for(first_pass_call + outcome.accepted_call);
            m.fitness = score(model, config, m.genotype, outcome.raw_after, generation, penalty_divisor);
        });
        for (std::size_t i = 0; i < population.size(); ++i) {
            if (changed[i]) {
                events.push_back(std::move(slot_events[i]));
            }
        }
    }
    evaluations += std::accumulate(used.begin(), used.end(), 0LL);
    return events;
}

} // namespace grnevo
