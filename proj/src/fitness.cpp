#include "grnevo/fitness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace grnevo {

namespace {
constexpr double kFlatResolution = 1e-6;
}

std::vector<double> autocorrelation(std::span<const double> series, int max_lag)
{
    const auto n = series.size();
    if (max_lag < 0 || static_cast<std::size_t>(max_lag) >= n) {
        throw std::invalid_argument("series of length " + std::to_string(n) + " is too short for lag "
                                    + std::to_string(max_lag));
    }
    const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);
    std::vector<double> centered(n);
    std::transform(series.begin(), series.end(), centered.begin(), [mean](double x) { return x - mean; });

    std::vector<double> acf(static_cast<std::size_t>(max_lag) + 1, 0.0);
    for (std::size_t lag = 0; lag < acf.size(); ++lag) {
        double sum = 0.0;
        for (std::size_t t = 0; t + lag < n; ++t) {
            sum += centered[t] * centered[t + lag];
        }
        acf[lag] = sum / static_cast<double>(n - lag);
    }
    const double c0 = acf[0];
    // Variation below integrator resolution counts as a flat series.
    const double resolution = kFlatResolution * std::max(std::abs(mean), kFlatResolution);
    if (!(std::sqrt(c0) > resolution)) {
        std::fill(acf.begin(), acf.end(), 0.0);
        return acf;
    }
    for (auto& c : acf) {
        c /= c0;
    }
    return acf;
}

double autocorr_metric(std::span<const double> series, int max_lag)
{
    if (std::any_of(series.begin(), series.end(), [](double x) { return !std::isfinite(x); })) {
        return 0.0;
    }
    const auto acf = autocorrelation(series, max_lag);
    double metric = 0.0;
    int minima = 0;
    for (std::size_t lag = 1; lag + 1 < acf.size() && minima < 5; ++lag) {
        if (acf[lag] < acf[lag - 1] && acf[lag] < acf[lag + 1]) {
            metric += (minima == 0 ? 1.0 : 2.0) * acf[lag];
            ++minima;
        }
    }
    return metric;
}

double penalty(int generation, double divisor, double hill_magnitude)
{
    if (generation < 0) {
        throw std::invalid_argument("generation must be nonnegative");
    }
    if (!(divisor > 0.0)) {
        throw std::invalid_argument("penalty divisor must be positive");
    }
    return static_cast<double>(generation) / divisor * hill_magnitude;
}

double penalty(int generation, double divisor, const GrnModel& model, const Genotype& genotype)
{
    return penalty(generation, divisor, model.hill_magnitude(genotype));
}

double penalty(int generation, double divisor, const Eigen::MatrixXd& hill, const GrnModel& model)
{
    double magnitude = 0.0;
    for (const auto& slot : model.evolvable_slots()) {
        magnitude += std::abs(hill(slot.source, slot.target));
    }
    return penalty(generation, divisor, magnitude);
}

namespace {

double mean_protein(const SimulationTrace& trace, int gene)
{
    return trace.protein.col(gene).mean();
}

double protein_metric(const GrnParameters& params, int target, const InitialState& init, int duration,
                      const IntegratorOptions& options)
{
    const auto trace = simulate(params, init, duration, options);
    return autocorr_metric(trace.protein_series(target));
}

void check_gene(const GrnParameters& params, int gene, const char* role)
{
    if (gene < 0 || gene >= params.gene_count()) {
        throw std::invalid_argument(std::string(role) + " gene " + std::to_string(gene) + " is out of range");
    }
}

} // namespace

double bistable_raw(const GrnParameters& params, int target, const InitialState& background, int duration,
                    const IntegratorOptions& options)
{
    check_gene(params, target, "target");
    InitialState low = background;
    InitialState high = background;
    low.set(target, 1.0);
    high.set(target, 100.0);
    try {
        const double a = mean_protein(simulate(params, low, duration, options), target);
        const double b = mean_protein(simulate(params, high, duration, options), target);
        return std::max(kBistableFloor, -std::abs(a - b));
    }
    catch (const IntegrationError&) {
        return 0.0;
    }
}

double oscillator_raw(const GrnParameters& params, int target, const InitialState& init, int duration,
                      const IntegratorOptions& options)
{
    check_gene(params, target, "target");
    try {
        return protein_metric(params, target, init, duration, options);
    }
    catch (const IntegrationError&) {
        return 0.0;
    }
}

double conditional_raw(const GrnParameters& params, int target, int switch_gene, const InitialState& background,
                       int duration, const IntegratorOptions& options)
{
    check_gene(params, target, "target");
    check_gene(params, switch_gene, "switch");
    InitialState low = background;
    InitialState high = background;
    low.set(switch_gene, 1.0);
    high.set(switch_gene, 100.0);
    try {
        return protein_metric(params, target, low, duration, options)
             - protein_metric(params, target, high, duration, options);
    }
    catch (const IntegrationError&) {
        return 0.0;
    }
}

double dual_raw(const GrnParameters& params, int target, const InitialState& first, const InitialState& second,
                int duration, const IntegratorOptions& options)
{
    check_gene(params, target, "target");
    try {
        return protein_metric(params, target, first, duration, options)
             - protein_metric(params, target, second, duration, options);
    }
    catch (const IntegrationError&) {
        return 0.0;
    }
}

} // namespace grnevo
