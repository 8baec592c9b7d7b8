#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "grnevo/dynamics.hpp"
#include "grnevo/evolution.hpp"
#include "grnevo/model.hpp"
#include "grnevo/reduction.hpp"

namespace grnevo {

enum class ProblemKind : std::uint8_t { Bistable, Oscillator, ConditionalOscillator, DualOscillator };
enum class Density : std::uint8_t { Dense, Medium, Sparse };

[[nodiscard]] std::string to_string(ProblemKind kind);
[[nodiscard]] ProblemKind problem_kind_from_string(const std::string& name);
[[nodiscard]] std::string to_string(Density density);
[[nodiscard]] Density density_from_string(const std::string& name);

/// Pairs given as source and target gene lists; expands to their product.
struct SlotBlock {
    std::vector<int> from;
    std::vector<int> to;
};
[[nodiscard]] std::vector<Slot> expand(const std::vector<SlotBlock>& blocks);

struct ProblemSpec {
    std::string name;
    ProblemKind kind = ProblemKind::Oscillator;
    std::shared_ptr<const GrnModel> model;
    std::vector<std::string> gene_names;
    int target_gene = 0;
    int switch_gene = -1;
    double threshold = 0.0;
    double penalty_divisor = 250.0;
    int popsize = 25;
    int popsize_after = 25;
    std::array<int, 3> density{};  // nonzero Hill count for dense, medium, sparse
    int duration = 100;
    /// Upper end of the uniform range for randomized initial levels.
    double random_level_max = 20.0;
    /// Level of non-target species in bistable evolution simulations.
    double bistable_background = 1.0;
    IntegratorOptions integrator;

    /// Frozen oscillator genes and their prepared states (dual problem only).
    std::vector<int> oscillator_genes;
    InitialState oscillator_flat;
    InitialState oscillator_cycle;

    /// Inputs used to build `model`, kept so the mask can be overridden.
    std::vector<Subnetwork> subnetworks;
    int evolvable_genes = 0;
    double basal = kDefaultBasalRate;
    std::vector<SlotBlock> forbidden;
    std::vector<SlotBlock> opened;
    std::string notes;

    [[nodiscard]] int nonzero_for(Density d) const { return density[static_cast<std::size_t>(d)]; }
    void validate() const;
};

/// Rebuilds `model` from subnetworks, evolvable gene count, and mask.
void rebuild_model(ProblemSpec& problem);

/// Problem file loader. Subnetwork paths are resolved relative to the file.
[[nodiscard]] ProblemSpec load_problem(const std::filesystem::path& path);
/// Directory holding problems/ and networks/. GRNEVO_DATA_DIR overrides the
/// built-in default.
[[nodiscard]] std::filesystem::path data_directory();
/// Built-in name (bistable, oscillator, conditional-oscillator,
/// dual-oscillator) or a path to a problem file.
[[nodiscard]] ProblemSpec resolve_problem(const std::string& name_or_path);

/// How non-prescribed species are initialized.
/// Evolution: the search protocol (bistable background fixed, oscillator
/// problems random per evaluation). Robustness: every non-prescribed species
/// random.
enum class InitMode : std::uint8_t { Evolution, Robustness };

/// Initial state of all species before problem-specific overrides.
[[nodiscard]] InitialState background_state(const ProblemSpec& problem, std::uint64_t seed, InitMode mode);
/// Raw fitness of a full parameter set under the problem's protocol.
[[nodiscard]] double problem_raw(const ProblemSpec& problem, const GrnParameters& params, std::uint64_t seed,
                                 InitMode mode = InitMode::Evolution);
/// Genotype-level raw function for the evolution engine.
[[nodiscard]] RawFunction make_raw_function(const ProblemSpec& problem);

/// Number of replicates (out of `replicates`) whose raw is below the threshold.
[[nodiscard]] int robustness_test(const ProblemSpec& problem, const GrnParameters& params, std::uint64_t seed,
                                  int replicates = 100);

/// Relative raw decrease below which a post-processing change is treated as
/// integrator noise. Self-loops on genes decoupled from the target move raw
/// by around 1e-7 through step-size control alone.
inline constexpr double kPostprocessMinImprovement = 1e-5;

/// Tries the lower then the upper Hill bound on every evolvable diagonal slot,
/// keeping a change only when it lowers raw by more than
/// min_improvement * max(1, |raw|).
[[nodiscard]] Genotype autoregulation_postprocess(const GrnModel& model, const Genotype& genotype, double raw,
                                                  const std::function<double(const Genotype&)>& raw_fn,
                                                  double* raw_out = nullptr,
                                                  double min_improvement = kPostprocessMinImprovement);

struct TrialSettings {
    MethodConfig method;
    DeConfig de;
    int max_generations = 50;
    /// Consecutive generations with an unchanged best interaction count,
    /// after behavior is found, that end the trial.
    int stall_generations = 5;
    int robustness_replicates = 100;
    int success_count = 90;
    int workers = 1;

    [[nodiscard]] static TrialSettings defaults(const ProblemSpec& problem, Method method);
    void validate() const;
};

struct RunResult {
    std::string problem;
    Method method = Method::ForcedReduction;
    Density density = Density::Dense;
    std::uint64_t seed = 0;

    Genotype evolved;        ///< best member at termination
    Genotype genotype;       ///< after autoregulation post-processing
    GrnParameters network;   ///< decoded `genotype`
    double raw_evolved = 0.0;
    double raw = 0.0;
    int interactions_evolved = 0;
    int interactions = 0;
    int nodes_evolved = 0;
    int nodes = 0;

    long long evaluations = 0;
    int generations = 0;
    int behavior_generation = -1;
    int restarts = 0;
    int robustness = 0;
    bool success = false;
    std::vector<GenerationRecord> history;
    std::vector<PruneEvent> prune_events;
};

[[nodiscard]] RunResult run_trial(const ProblemSpec& problem, const TrialSettings& settings, Density density,
                                  std::uint64_t seed);

struct TrialPlan {
    std::size_t problem = 0;  ///< index into the campaign's problem list
    Method method = Method::ForcedReduction;
    Density density = Density::Dense;
    int repetition = 0;
    std::uint64_t seed = 0;

    [[nodiscard]] std::string id(const std::vector<ProblemSpec>& problems) const;
};

/// Cartesian product in problem, method, density, repetition order. Seeds
/// depend only on the cell and repetition, so any subset re-runs identically.
[[nodiscard]] std::vector<TrialPlan> plan_campaign(const std::vector<ProblemSpec>& problems,
                                                   const std::vector<Method>& methods,
                                                   const std::vector<Density>& densities, int repetitions,
                                                   std::uint64_t master_seed);
[[nodiscard]] std::uint64_t trial_seed(std::uint64_t master_seed, const std::string& problem, Method method,
                                       Density density, int repetition);

struct TrialRecord {
    TrialPlan plan;
    std::optional<RunResult> result;
    std::string error;
};

struct CellSummary {
    std::string problem;
    Method method = Method::ForcedReduction;
    Density density = Density::Dense;
    int trials = 0;
    int successes = 0;
    double success_rate = 0.0;
    double mean_interactions = 0.0;
    double sd_interactions = 0.0;
};

[[nodiscard]] std::vector<CellSummary> summarize(const std::vector<ProblemSpec>& problems,
                                                 const std::vector<TrialRecord>& records);

/// Applies `settings_for` to each planned trial; trials run on up to
/// `workers` threads, each single-threaded. `on_done` is called in plan order
/// position as trials finish (from worker threads, serialized).
[[nodiscard]] std::vector<TrialRecord> run_campaign(
    const std::vector<ProblemSpec>& problems, const std::vector<TrialPlan>& plan,
    const std::function<TrialSettings(const ProblemSpec&, Method)>& settings_for, int workers,
    const std::function<void(const TrialRecord&)>& on_done = {});

void write_trial_artifacts(const std::filesystem::path& dir, const ProblemSpec& problem, const RunResult& result);
void write_campaign_tables(const std::filesystem::path& dir, const std::vector<ProblemSpec>& problems,
                           const std::vector<TrialRecord>& records);

} // namespace grnevo
