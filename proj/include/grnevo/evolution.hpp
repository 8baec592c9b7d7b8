#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "grnevo/population.hpp"
#include "grnevo/reduction.hpp"
#include "grnevo/rng.hpp"

namespace grnevo {


enum class Strategy : std::uint8_t { Rand1, RandToBest1 };

/// How the rand-to-best mutant is formed.
/// Verbatim: F*(best - r1) + F*(r2 - r3), with no base vector.
/// Canonical: r1 + F*(best - r1) + F*(r2 - r3).
enum class RandToBestForm : std::uint8_t { Verbatim, Canonical };

[[nodiscard]] std::string to_string(Strategy strategy);
[[nodiscard]] std::string to_string(RandToBestForm form);
[[nodiscard]] RandToBestForm rand_to_best_form_from_string(const std::string& name);

struct DeConfig {
    int popsize = 25;
    /// Population size kept once behavior is found (truncation to the best).
    int popsize_after = 25;
    double crossover_rate = 0.8;
    double f_before = 0.8;
    double f_after = 1.2;
    int max_restarts = 3;
    int stagnation_for_restart = 10;
    RandToBestForm rand_to_best = RandToBestForm::Canonical;

    void validate() const;
};

/// x1 + F*(x2 - x3), clamped.
[[nodiscard]] Genotype mutate_rand1(const GrnModel& model, const Genotype& x1, const Genotype& x2,
                                    const Genotype& x3, double f);

/// Rand-to-best mutant in the chosen form, clamped.
[[nodiscard]] Genotype mutate_rand_to_best(const GrnModel& model, const Genotype& best, const Genotype& x1,
                                           const Genotype& x2, const Genotype& x3, double f,
                                           RandToBestForm form = RandToBestForm::Verbatim);

/// Unclamped mutant vectors, for tests that need to observe pre-clamp values.
[[nodiscard]] Genotype rand1_vector(const Genotype& x1, const Genotype& x2, const Genotype& x3, double f);
[[nodiscard]] Genotype rand_to_best_vector(const Genotype& best, const Genotype& x1, const Genotype& x2,
                                           const Genotype& x3, double f, RandToBestForm form);

/// Binomial crossover. Each component comes from the mutant with probability
/// cr; one uniformly chosen component always does.
[[nodiscard]] Genotype crossover_bin(const Genotype& target, const Genotype& mutant, double cr, Rng& rng);

/// Three distinct indices in [0, n), all different from `exclude`.
[[nodiscard]] std::array<std::size_t, 3> pick_three(std::size_t n, std::size_t exclude, Rng& rng);

struct SearchProblem {
    const GrnModel* model = nullptr;
    RawFunction raw;
    double threshold = 0.0;
    double penalty_divisor = 250.0;
    int initial_nonzero = 0;
};

struct GenerationRecord {
    int generation = 0;
    long long evaluations = 0;
    double best_raw = 0.0;
    double best_penalty = 0.0;
    double best_total = 0.0;
    int interactions = 0;
    Strategy strategy = Strategy::Rand1;
    int restarts = 0;
    int population = 0;
};

/// CSV of generation records with a header row.
void write_generation_csv(std::ostream& out, const std::vector<GenerationRecord>& records);

class Evolution {
public:
    Evolution(SearchProblem problem, DeConfig de, MethodConfig method, std::uint64_t seed, int workers = 1);

    /// Random population at generation 0.
    void initialize();
    /// One DE generation followed by the end-of-generation reduction.
    void step();
    /// Reinitializes the population after stagnation, before behavior is found.
    /// Returns true when a restart happened.
    bool maybe_restart();

    [[nodiscard]] const std::vector<Member>& population() const noexcept { return population_; }
    [[nodiscard]] int generation() const noexcept { return generation_; }
    [[nodiscard]] long long evaluations() const noexcept { return evaluations_; }
    [[nodiscard]] bool behavior_found() const noexcept { return behavior_generation_ >= 0; }
    [[nodiscard]] int behavior_generation() const noexcept { return behavior_generation_; }
    [[nodiscard]] int restarts() const noexcept { return restarts_; }
    [[nodiscard]] int stagnation() const noexcept { return stagnation_; }
    [[nodiscard]] Strategy strategy() const noexcept
    {
        return behavior_found() ? Strategy::RandToBest1 : Strategy::Rand1;
    }
    [[nodiscard]] double mutation_factor() const noexcept { return behavior_found() ? de_.f_after : de_.f_before; }
    [[nodiscard]] const Member& best_ever() const noexcept { return best_ever_; }
    /// Index of the lowest-total member, first on ties.
    [[nodiscard]] std::size_t best_index() const;
    [[nodiscard]] const std::vector<GenerationRecord>& history() const noexcept { return history_; }
    [[nodiscard]] const std::vector<PruneEvent>& prune_events() const noexcept { return prune_events_; }
    [[nodiscard]] const GrnModel& model() const noexcept { return *problem_.model; }
    [[nodiscard]] const DeConfig& de_config() const noexcept { return de_; }
    [[nodiscard]] const MethodConfig& method_config() const noexcept { return method_; }

    /// Replaces the population, e.g. to start from a known state in tests.
    /// Members are evaluated at the current generation.
    void set_population(std::vector<Genotype> genotypes);

private:
    void fill_population(Stream stream, std::uint64_t epoch);
    void evaluate_new(std::vector<Member>& members, std::uint64_t phase);
    void rescore();
    void finish_generation();


    SearchProblem problem_;
    DeConfig de_;
    MethodConfig method_;
    std::uint64_t seed_;
    int workers_;

    std::vector<Member> population_;
    Member best_ever_;
    bool has_best_ = false;
    int generation_ = 0;
    long long evaluations_ = 0;
    int behavior_generation_ = -1;
    int restarts_ = 0;
    int stagnation_ = 0;
    Strategy used_strategy_ = Strategy::Rand1;
    std::vector<GenerationRecord> history_;
    std::vector<PruneEvent> prune_events_;
};

} // namespace grnevo
