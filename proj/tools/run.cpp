#include <filesystem>
#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "grnevo/config.hpp"
#include "grnevo/format.hpp"
#include "grnevo/network_io.hpp"

namespace grnevo::cli {

void add_run(CLI::App& app, RunOptions& o)
{
    app.add_option("--config", o.config, "Experiment config JSON; flags override its values");
    app.add_option("--problem", o.problems, "Built-in problem name or problem file (repeatable)");
    app.add_option("--method", o.methods, "forced-reduction, no-penalty or penalty (repeatable)");
    app.add_option("--density", o.densities, "dense, medium or sparse (repeatable)");
    app.add_option("--reps", o.repetitions, "Repetitions per cell")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "Campaign master seed");
    app.add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--out", o.out, "Output directory (default: $GRNEVO_OUTPUT_DIR or grnevo-output)");
    app.add_option("--campaign", o.campaign, "Named campaign; 'paper' is every problem, method and density x 25")
        ->check(CLI::IsMember({"paper"}));
    app.add_flag("--dry-run", o.dry_run, "Print the trial schedule without running it");
    app.add_flag("--quiet", o.quiet, "Suppress per-trial lines");
}

namespace {

ExperimentConfig build_config(const RunOptions& o)
{
    ExperimentConfig config = o.campaign == "paper" ? ExperimentConfig::full_campaign() : ExperimentConfig{};
    if (!o.config.empty()) {
        config = load_config(o.config);
    }
    if (!o.problems.empty()) {
        config.problems = o.problems;
    }
    if (!o.methods.empty()) {
        config.methods.clear();
        for (const auto& m : o.methods) {
            config.methods.push_back(method_from_string(m));
        }
    }
    if (!o.densities.empty()) {
        config.densities.clear();
        for (const auto& d : o.densities) {
            config.densities.push_back(density_from_string(d));
        }
    }
    if (o.repetitions) {
        config.repetitions = *o.repetitions;
    }
    if (o.seed) {
        config.seed = *o.seed;
    }
    if (o.workers) {
        config.workers = *o.workers;
    }
    if (!o.out.empty()) {
        config.output_dir = o.out;
    }
    config.validate();
    return config;
}

void write_text(const std::filesystem::path& file, const std::string& text)
{
    std::ofstream out(file, std::ios::binary);
    out << text;
    if (!out) {
        throw std::runtime_error("cannot write '" + file.string() + "'");
    }
}

} // namespace

int cmd_run(const RunOptions& o)
{
    ExperimentConfig config;
    std::vector<ProblemSpec> problems;
    try {
        config = build_config(o);
        for (const auto& name : config.problems) {
            problems.push_back(apply_overrides(resolve_problem(name), config.overrides));
            (void)trial_settings(problems.back(), config.methods.front(), config.overrides);
        }
    }
    catch (const std::invalid_argument& e) {
        std::cerr << "grnevo run: configuration error: " << e.what() << '\n';
        return kConfigError;
    }
    catch (const DocumentError& e) {
        std::cerr << "grnevo run: configuration error: " << e.what() << '\n';
        return kConfigError;
    }
    catch (const std::exception& e) {
        std::cerr << "grnevo run: " << e.what() << '\n';
        return kIoError;
    }

    const auto plan = plan_campaign(problems, config.methods, config.densities, config.repetitions, config.seed);
    if (o.dry_run) {
        std::cout << plan.size() << " trials scheduled (" << problems.size() << " problems x "
                  << config.methods.size() << " methods x " << config.densities.size() << " densities x "
                  << config.repetitions << " repetitions)\n";
        for (const auto& p : plan) {
            std::cout << p.id(problems) << " seed=" << p.seed << '\n';
        }
        return kOk;
    }

    const auto dir = config.resolved_output_dir();
    try {
        std::filesystem::create_directories(dir / "trials");
        write_text(dir / "config.json", config_to_json(config));
        auto records = run_campaign(
            problems, plan,
            [&](const ProblemSpec& problem, Method method) {
                return trial_settings(problem, method, config.overrides);
            },
            config.workers,
            [&](const TrialRecord& record) {
                const auto id = record.plan.id(problems);
                if (record.result) {
                    const auto& r = *record.result;
                    write_trial_artifacts(dir / "trials" / id, problems[record.plan.problem], r);
                    if (!o.quiet) {
                        std::cout << id << " success=" << (r.success ? 1 : 0) << " robustness=" << r.robustness
                                  << " interactions=" << r.interactions << " nodes=" << r.nodes
                                  << " raw=" << format_number(r.raw) << " evaluations=" << r.evaluations
                                  << " generations=" << r.generations << std::endl;
                    }
                }
                else {
                    std::cout << id << " failed: " << record.error << std::endl;
                }
            });
        write_campaign_tables(dir, problems, records);
        int successes = 0;
        for (const auto& r : records) {
            successes += r.result && r.result->success ? 1 : 0;
        }
        std::cout << successes << "/" << records.size() << " trials successful; artifacts in " << dir.string()
                  << '\n';
    }
    catch (const std::exception& e) {
        std::cerr << "grnevo run: " << e.what() << '\n';
        return kIoError;
    }
    return kOk;
}

} // namespace grnevo::cli
