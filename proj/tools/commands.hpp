#pragma once

#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace grnevo::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 2;
inline constexpr int kIoError = 3;

struct RunOptions {
    std::string config;
    std::vector<std::string> problems;
    std::vector<std::string> methods;
    std::vector<std::string> densities;
    std::optional<int> repetitions;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::string out;
    std::string campaign;
    bool dry_run = false;
    bool quiet = false;
};

struct SimulateOptions {
    std::string network;
    std::vector<std::string> set;
    double level = 1.0;
    int duration = 100;
    std::string out;
};

struct ReportOptions {
    std::string dir;
};

void add_run(CLI::App& app, RunOptions& options);
void add_simulate(CLI::App& app, SimulateOptions& options);
void add_report(CLI::App& app, ReportOptions& options);

int cmd_run(const RunOptions& options);
int cmd_simulate(const SimulateOptions& options);
int cmd_report(const ReportOptions& options);

} // namespace grnevo::cli
