#pragma once

#include <span>

#include "grnevo/dynamics.hpp"
#include "grnevo/model.hpp"

namespace grnevo {

/// Lower is better. total == raw + penalty exactly.
struct FitnessValue {
    double raw = 0.0;
    double penalty = 0.0;
    double total = 0.0;

    [[nodiscard]] static FitnessValue make(double raw, double penalty) noexcept
    {
        return {raw, penalty, raw + penalty};
    }
};

/// Raw-fitness levels at or below which the target behavior counts as found.
namespace threshold {
inline constexpr double kBistable = -9.0;
inline constexpr double kOscillator = -5.5;
inline constexpr double kConditionalOscillator = -5.5;
inline constexpr double kDualOscillator = -3.0;
} // namespace threshold

inline constexpr int kAutocorrelationMaxLag = 50;
inline constexpr double kBistableFloor = -15.0;

/// Normalized, mean-centered, unbiased autocorrelation for lags 0..max_lag.
/// Returns all zeros for a series with zero variance.
[[nodiscard]] std::vector<double> autocorrelation(std::span<const double> series,
                                                  int max_lag = kAutocorrelationMaxLag);

/// Oscillation score of a series: first local minimum of its autocorrelation
/// plus twice the sum of the second through fifth minima. A clean periodic
/// signal scores about -9; non-oscillating series score 0. Series with
/// non-finite values also score 0.
[[nodiscard]] double autocorr_metric(std::span<const double> series, int max_lag = kAutocorrelationMaxLag);

/// Interaction penalty that grows with the generation: (generation / divisor) * magnitude,
/// where magnitude is the sum of |hill| over evolvable slots.
[[nodiscard]] double penalty(int generation, double divisor, double hill_magnitude);
[[nodiscard]] double penalty(int generation, double divisor, const GrnModel& model, const Genotype& genotype);
/// Same, summing |hill| over the slots that `model` marks evolvable.
[[nodiscard]] double penalty(int generation, double divisor, const Eigen::MatrixXd& hill, const GrnModel& model);

/// Two simulations of `duration` steps from `background`, with the target
/// gene's mRNA and protein set to 1 and 100. Returns
/// max(-15, -|mean_1 - mean_2|) over all target-protein samples, or 0 if
/// either simulation fails.
[[nodiscard]] double bistable_raw(const GrnParameters& params, int target, const InitialState& background,
                                  int duration = 50, const IntegratorOptions& options = {});

/// Oscillation score of the target protein over one simulation.
[[nodiscard]] double oscillator_raw(const GrnParameters& params, int target, const InitialState& init,
                                    int duration = 100, const IntegratorOptions& options = {});

/// metric(switch gene at 1) - metric(switch gene at 100). Negative when the
/// target oscillates only while the switch gene starts low.
[[nodiscard]] double conditional_raw(const GrnParameters& params, int target, int switch_gene,
                                     const InitialState& background, int duration = 100,
                                     const IntegratorOptions& options = {});

/// metric(first) - metric(second) for the target protein. The caller decides
/// which prepared state comes first; the experiment module passes the
/// "frozen oscillator flat" state first so that the desired behavior is
/// negative.
[[nodiscard]] double dual_raw(const GrnParameters& params, int target, const InitialState& first,
                              const InitialState& second, int duration = 100,
                              const IntegratorOptions& options = {});

} // namespace grnevo
