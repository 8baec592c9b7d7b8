#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Evolve minimal gene regulatory networks"};
    app.require_subcommand(1);

    grnevo::cli::RunOptions run;
    grnevo::cli::SimulateOptions simulate;
    grnevo::cli::ReportOptions report;
    auto* run_cmd = app.add_subcommand("run", "Run trials or a campaign");
    auto* simulate_cmd = app.add_subcommand("simulate", "Simulate a network file and write its trace");
    auto* report_cmd = app.add_subcommand("report", "Summarize campaign artifacts into plot-ready tables");
    grnevo::cli::add_run(*run_cmd, run);
    grnevo::cli::add_simulate(*simulate_cmd, simulate);
    grnevo::cli::add_report(*report_cmd, report);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (run_cmd->parsed()) {
        return grnevo::cli::cmd_run(run);
    }
    if (simulate_cmd->parsed()) {
        return grnevo::cli::cmd_simulate(simulate);
    }
    return grnevo::cli::cmd_report(report);
}
