#pragma once

#include <functional>
#include <string>
#include <vector>

#include "grnevo/population.hpp"

namespace grnevo {

enum class Method : std::uint8_t { ForcedReduction, NoPenalty, Penalty };

struct MethodConfig {
    Method method = Method::ForcedReduction;
    bool penalty_enabled = true;
    bool truncation_enabled = false;
    bool pruning_enabled = true;
    double step_tolerance = 0.15;
    double global_tolerance = 0.10;
    int max_zeroed_per_pass = 5;
    double truncation_threshold = 0.5;
    /// Pruning evaluations draw fresh initial states (derived from the member
    /// seed, generation, and evaluation index) instead of reusing the member's.
    bool fresh_states = true;

    /// Flags set per the method: ForcedReduction = penalty + pruning,
    /// NoPenalty = truncation, Penalty = penalty + truncation.
    [[nodiscard]] static MethodConfig make(Method method);
    void validate() const;
};

[[nodiscard]] std::string to_string(Method method);
/// Accepts "forced-reduction", "no-penalty", "penalty" and the CamelCase names.
[[nodiscard]] Method method_from_string(const std::string& name);

/// Zeroes evolvable Hill exponents with |n| < threshold. Returns the number zeroed.
int truncate_small(const GrnModel& model, Genotype& genotype, double threshold = 0.5);
[[nodiscard]] Genotype truncated(const GrnModel& model, Genotype genotype, double threshold = 0.5);

struct PruneOutcome {
    Genotype genotype;
    double raw_before = 0.0;
    double raw_after = 0.0;
    std::vector<Slot> zeroed;
    long long evaluations = 0;
    /// Index of the raw_fn call that produced raw_after, or -1 if nothing was kept.
    long long accepted_call = -1;
};

/// One ordered sweep over the nonzero evolvable Hill exponents, weakest first.
/// A zeroing is kept when its raw is within step_tolerance of the working raw;
/// the sweep stops after max_zeroed_per_pass zeros or when an accepted zeroing
/// would leave raw more than global_tolerance above raw_before (that zeroing is
/// reverted). A throwing raw_fn rejects the zeroing.
[[nodiscard]] PruneOutcome forced_reduction_pass(const GrnModel& model, const Genotype& genotype,
                                                 double raw_before,
                                                 const std::function<double(const Genotype&)>& raw_fn,
                                                 const MethodConfig& config);

/// End-of-generation reduction over the whole population.
/// Truncation methods truncate every member and re-evaluate members that
/// changed. ForcedReduction prunes, once behavior is found, every member whose
/// raw is below the threshold. Pass evaluations are added to `evaluations`.
/// Penalty and total of touched members are recomputed for `generation`.
std::vector<PruneEvent> apply_end_of_generation(std::vector<Member>& population, const GrnModel& model,
                                                const MethodConfig& config, const RawFunction& raw_fn,
                                                bool behavior_found, double threshold, int generation,
                                                double penalty_divisor, long long& evaluations,
                                                int workers = 1);

/// Fitness of a member under the method: raw + penalty when enabled.
[[nodiscard]] FitnessValue score(const GrnModel& model, const MethodConfig& config, const Genotype& genotype,
                                 double raw, int generation, double penalty_divisor);

} // namespace grnevo
