// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "grnevo/experiment.hpp"
#include "grnevo/fitness.hpp"
#include "grnevo/network_io.hpp"
#include "grnevo/rng.hpp"
#include "oracles.hpp"

using namespace grnevo;

namespace {

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail)
{
    std::printf("[%s] criterion %d %s: %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
    failures += pass ? 0 : 1;
}

GrnParameters network(const char* name)
{
    return load_network(data_directory() / "networks" / (std::string(name) + ".json")).params;
}

InitialState asymmetric(int genes)
{
    InitialState init = InitialState::uniform(genes, 1.0);
    init.set(0, 5.0);
    return init;
}

std::vector<RunResult> trials(const ProblemSpec& problem, Method method, Density density, int count, int workers = 1)
{
    std::vector<RunResult> out;
    auto settings = TrialSettings::defaults(problem, method);
    settings.workers = workers;
    for (int seed = 0; seed < count; ++seed) {
        out.push_back(run_trial(problem, settings, density, static_cast<std::uint64_t>(seed)));
        const auto& r = out.back();
        std::printf("    %s %s seed %d: success=%d robustness=%d interactions=%d (before post-processing %d) nodes=%d gens=%d\n",
                    problem.name.c_str(), to_string(method).c_str(), seed, r.success ? 1 : 0, r.robustness,
                    r.interactions, r.interactions_evolved, r.nodes, r.generations);
        std::fflush(stdout);
    }
    return out;
}

double mean_interactions(const std::vector<RunResult>& rs)
{
    double s = 0.0;
    for (const auto& r : rs) {
        s += r.interactions;
    }
    return s / static_cast<double>(rs.size());
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

void metric_calibration()
{
    std::vector<double> cosine, flat(101, 4.0);
    for (int t = 0; t <= 100; ++t) {
        cosine.push_back(std::cos(2.0 * std::numbers::pi * t / 10.0));
    }
    const double m = autocorr_metric(cosine);
    const double c = autocorr_metric(flat);
    report(1, "metric calibration", std::abs(m + 9.0) <= 0.5 && c == 0.0,
           fmt("cosine %.4f (want -9 +- 0.5), constant %.1f (want 0)", m, c));
}

void oracle_networks()
{
    const auto osc = resolve_problem("oscillator");
    const auto bi = resolve_problem("bistable");
    const double rep_raw = oscillator_raw(network("repressilator"), 0, asymmetric(3));
    const int rep_rob = robustness_test(osc, oracle::embed(network("repressilator"), 6), 1);
    const double tog_raw = bistable_raw(network("toggle"), 0, InitialState::uniform(2, 1.0));
    const int tog_rob = robustness_test(bi, oracle::embed(network("toggle"), 6), 1);
    report(2, "oracle networks", rep_raw <= -5.5 && rep_rob >= 90 && tog_raw <= -9.0 && tog_rob >= 90,
           fmt("repressilator raw %.3f robustness %.0f; toggle raw %.3f robustness %.0f", rep_raw, rep_rob, tog_raw,
               tog_rob));
}

void oscillator_rediscovery(const std::vector<RunResult>& rs)
{
    int successes = 0;
    int over = 0;
    int three = 0;
    std::string large;
    for (const auto& r : rs) {
        if (!r.success) {
            continue;
        }
        ++successes;
        if (r.interactions > 6) {
            ++over;
            large += " seed " + std::to_string(r.seed) + "=" + std::to_string(r.interactions);
        }
        three += r.interactions == 3 && r.nodes == 3 ? 1 : 0;
    }
    std::string detail = std::to_string(successes) + "/10 successful (want >= 5), " + std::to_string(over)
        + " successful with > 6 interactions (want 0)" + (large.empty() ? "" : ":" + large) + ", "
        + std::to_string(three) + " with 3 nodes / 3 interactions (want >= 1)";
    report(3, "oscillator rediscovery", successes >= 5 && over == 0 && three >= 1, detail);
}

void bistable_rediscovery(const std::vector<RunResult>& rs)
{
    int successes = 0;
    int two = 0;
    for (const auto& r : rs) {
        if (r.success) {
            ++successes;
            two += r.interactions_evolved == 2 && r.nodes_evolved == 2 ? 1 : 0;
        }
    }
    report(4, "bistable rediscovery", successes >= 5 && 2 * two > successes,
           std::to_string(successes) + "/10 successful (want >= 5), " + std::to_string(two)
               + " of them with 2 nodes / 2 interactions before post-processing (want a majority)");
}

void method_ordering(double fr, double pe, double np)
{
    report(5, "method ordering", fr < pe && pe < np && fr <= 6.0 && np >= 2.0 * fr,
           fmt("mean interactions forced-reduction %.2f, penalty %.2f, no-penalty %.2f", fr, pe, np));
}

void pruning_properties()
{
    const auto osc = resolve_problem("oscillator");
    const auto bi = resolve_problem("bistable");
    Rng rng(2024);
    int tested = 0;
    int violations = 0;
    int max_zeroed = 0;
    long long attempts = 0;
    while (tested < 100 && attempts < 5000) {
        ++attempts;
        const bool use_osc = tested % 2 == 0;
        const auto& problem = use_osc ? osc : bi;
        const auto& model = *problem.model;
        auto params = oracle::embed(network(use_osc ? "repressilator" : "toggle"), 6);
        // Perturb the reference coefficients and add a few weak extra interactions.
        for (int j = 0; j < 6; ++j) {
            for (int i = 0; i < 6; ++i) {
                if (params.hill(j, i) != 0.0) {
                    params.hill(j, i) *= rng.uniform(0.8, 1.2);
                    params.binding(j, i) *= rng.uniform(0.8, 1.2);
                }
                else if (rng.bernoulli(0.2)) {
                    params.hill(j, i) = rng.uniform(-1.5, 1.5);
                    params.binding(j, i) = rng.uniform(1.0, 2.0);
                }
            }
            params.promoter[j] *= rng.uniform(0.8, 1.2);
            params.translation[j] *= rng.uniform(0.8, 1.2);
        }
        const Genotype g = model.clamp_bounds(model.encode(params));
        const std::uint64_t seed = rng.index(1u << 30);
        const auto raw_fn = [&](const Genotype& x) { return problem_raw(problem, model.decode(x), seed); };
        const double raw0 = raw_fn(g);
        if (!(raw0 < problem.threshold)) {
            continue;
        }
        ++tested;
        auto config = MethodConfig::make(Method::ForcedReduction);
        const auto out = forced_reduction_pass(model, g, raw0, raw_fn, config);
        const double raw_out = raw_fn(out.genotype);
        const int zeroed = model.interaction_count(g) - model.interaction_count(out.genotype);
        max_zeroed = std::max(max_zeroed, zeroed);
        const bool ok = raw_out <= raw0 + 0.10 * std::abs(raw0) && raw_out == out.raw_after && zeroed >= 0
            && zeroed <= 5 && static_cast<int>(out.zeroed.size()) == zeroed;
        violations += ok ? 0 : 1;
    }
    report(6, "pruning properties", tested == 100 && violations == 0,
           std::to_string(tested) + " behavior-exhibiting genotypes, " + std::to_string(violations)
               + " violations, at most " + std::to_string(max_zeroed) + " zeroed in one pass");
}

void penalty_linearity()
{
    bool ok = penalty(0, 250.0, 12.5) == 0.0;
    for (double magnitude : {0.5, 3.0, 7.3, 41.9}) {
        for (double divisor : {250.0, 2500.0}) {
            for (int g = 1; g <= 1000; ++g) {
                ok = ok && penalty(2 * g, divisor, magnitude) / penalty(g, divisor, magnitude) == 2.0;
            }
        }
    }
    report(7, "penalty linearity", ok, "ratio exactly 2 for g = 1..1000, zero at g = 0");
}

void integrator_consistency()
{
    IntegratorOptions fine;
    fine.rtol = 1e-7;
    fine.atol = 1e-10;
    double worst = 0.0;
    for (const char* name : {"repressilator", "toggle"}) {
        const auto p = network(name);
        for (double level : {1.0, 100.0}) {
            InitialState init = asymmetric(p.gene_count());
            if (std::string(name) == "toggle") {
                init = InitialState::uniform(2, 1.0);
                init.set(0, level);
            }
            const auto a = simulate(p, init, 100).protein;
            const auto b = simulate(p, init, 100, fine).protein;
            worst = std::max(worst, ((a - b).array().abs() / b.array().abs()).maxCoeff());
        }
    }
    report(8, "integrator consistency", worst < 1e-3, fmt("max relative protein difference %.3g (want < 1e-3)", worst));
}

std::string history_csv(const RunResult& r)
{
    std::ostringstream out;
    write_generation_csv(out, r.history);
    return out.str();
}

void determinism()
{
    bool same = true;
    std::string detail;
    const std::vector<std::pair<const char*, Method>> cases{{"oscillator", Method::ForcedReduction},
                                                            {"bistable", Method::Penalty}};
    for (const auto& [name, method] : cases) {
        const auto problem = resolve_problem(name);
        auto settings = TrialSettings::defaults(problem, method);
        settings.workers = 1;
        const auto a = run_trial(problem, settings, Density::Dense, 11);
        settings.workers = 4;
        const auto b = run_trial(problem, settings, Density::Dense, 11);
        const bool eq = history_csv(a) == history_csv(b) && a.genotype == b.genotype && a.robustness == b.robustness;
        same = same && eq;
        detail += std::string(name) + "/" + to_string(method) + " " + (eq ? "identical" : "DIFFERENT") + " over "
            + std::to_string(a.history.size()) + " generations; ";
    }
    report(9, "determinism", same, detail + "workers 1 vs 4");
}

void composition()
{
    const auto problem = resolve_problem("conditional-oscillator");
    const auto& model = *problem.model;
    bool forbidden = true;
    for (int j = 0; j < 5; ++j) {
        for (int i = 0; i < 5; ++i) {
            if ((j < 2) != (i < 2)) {
                forbidden = forbidden && model.slot_kind(j, i) == SlotKind::Forbidden;
            }
        }
    }
    const auto rs = trials(problem, Method::ForcedReduction, Density::Medium, 5);
    int small = 0;
    int successes = 0;
    for (const auto& r : rs) {
        for (int j = 0; j < 5; ++j) {
            for (int i = 0; i < 5; ++i) {
                if ((j < 2) != (i < 2)) {
                    forbidden = forbidden && r.network.hill(j, i) == 0.0;
                }
            }
        }
        successes += r.success ? 1 : 0;
        small += r.success && r.interactions <= 5 ? 1 : 0;
    }
    report(10, "composition", small >= 1 && forbidden,
           std::to_string(successes) + "/5 successful, " + std::to_string(small)
               + " successful with <= 5 evolved interactions (want >= 1); toggle-repressilator slots "
               + (forbidden ? "forbidden" : "NOT forbidden") + " in the model and every final network");
}

} // namespace

int main(int argc, char** argv)
{
    // With no arguments every criterion runs; otherwise only the listed ones.
    std::vector<int> wanted;
    for (int k = 1; k < argc; ++k) {
        wanted.push_back(std::atoi(argv[k]));
    }
    const auto selected = [&](int id) {
        return wanted.empty() || std::find(wanted.begin(), wanted.end(), id) != wanted.end();
    };

    const auto start = std::chrono::steady_clock::now();
    if (selected(1)) {
        metric_calibration();
    }
    if (selected(2)) {
        oracle_networks();
    }
    if (selected(3) || selected(5)) {
        const auto osc = resolve_problem("oscillator");
        const auto fr = trials(osc, Method::ForcedReduction, Density::Dense, 10);
        if (selected(3)) {
            oscillator_rediscovery(fr);
        }
        if (selected(5)) {
            const auto pe = trials(osc, Method::Penalty, Density::Dense, 10);
            const auto np = trials(osc, Method::NoPenalty, Density::Dense, 10);
            method_ordering(mean_interactions(fr), mean_interactions(pe), mean_interactions(np));
        }
    }
    if (selected(4)) {
        bistable_rediscovery(trials(resolve_problem("bistable"), Method::ForcedReduction, Density::Dense, 10));
    }
    if (selected(6)) {
        pruning_properties();
    }
    if (selected(7)) {
        penalty_linearity();
    }
    if (selected(8)) {
        integrator_consistency();
    }
    if (selected(9)) {
        determinism();
    }
    if (selected(10)) {
        composition();
    }

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d criteria failed, %.0f s\n", failures, secs);
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
