#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "grnevo/experiment.hpp"

namespace grnevo {

/// Optional replacements for problem and method defaults.
struct Overrides {
    std::optional<double> rtol;
    std::optional<double> atol;
    std::optional<double> threshold;
    std::optional<double> penalty_divisor;
    std::optional<int> duration;
    std::optional<int> popsize;
    std::optional<int> popsize_after;
    std::optional<double> crossover_rate;
    std::optional<double> f_before;
    std::optional<double> f_after;
    std::optional<int> max_restarts;
    std::optional<RandToBestForm> rand_to_best;
    std::optional<int> max_generations;
    std::optional<int> stall_generations;
    std::optional<double> step_tolerance;
    std::optional<double> global_tolerance;
    std::optional<int> max_zeroed_per_pass;
    std::optional<double> truncation_threshold;
    std::optional<int> robustness_replicates;
    std::optional<std::vector<SlotBlock>> forbidden;
    std::optional<std::vector<SlotBlock>> opened;
};

struct ExperimentConfig {
    /// Built-in problem names or problem file paths.
    std::vector<std::string> problems{"oscillator"};
    std::vector<Method> methods{Method::ForcedReduction};
    std::vector<Density> densities{Density::Dense};
    int repetitions = 1;
    std::uint64_t seed = 0;
    /// Empty means GRNEVO_OUTPUT_DIR, or "grnevo-output" when that is unset.
    std::string output_dir;
    int workers = 1;
    Overrides overrides;

    /// All problems, methods, and densities with 25 repetitions.
    [[nodiscard]] static ExperimentConfig full_campaign();
    [[nodiscard]] std::filesystem::path resolved_output_dir() const;
    [[nodiscard]] std::size_t trial_count() const;
    void validate() const;
};

/// Unknown keys and ill-typed values raise DocumentError naming the key.
[[nodiscard]] ExperimentConfig config_from_json(const std::string& text, const std::string& source = "<string>");
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);
/// Fully expanded configuration; reading it back reproduces the run.
[[nodiscard]] std::string config_to_json(const ExperimentConfig& config);

[[nodiscard]] ProblemSpec apply_overrides(ProblemSpec problem, const Overrides& overrides);
[[nodiscard]] TrialSettings trial_settings(const ProblemSpec& problem, Method method, const Overrides& overrides);

} // namespace grnevo
