#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "commands.hpp"

namespace grnevo::cli {

void add_report(CLI::App& app, ReportOptions& o)
{
    app.add_option("dir", o.dir, "Campaign output directory")->required();
}

namespace {

using Row = std::map<std::string, std::string>;

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> fields;
    std::stringstream in(line);
    std::string field;
    while (std::getline(in, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

std::vector<Row> read_csv(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in) {
        throw std::runtime_error("cannot read '" + file.string() + "'");
    }
    std::string line;
    std::getline(in, line);
    const auto header = split(line);
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto fields = split(line);
        Row row;
        for (std::size_t k = 0; k < header.size(); ++k) {
            row[header[k]] = k < fields.size() ? fields[k] : "";
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::ofstream open(const std::filesystem::path& file)
{
    std::ofstream out(file, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + file.string() + "'");
    }
    return out;
}

} // namespace

int cmd_report(const ReportOptions& o)
{
    const std::filesystem::path dir(o.dir);
    std::vector<std::string> missing;
    for (const char* name : {"summary.csv", "trials.csv"}) {
        if (!std::filesystem::is_regular_file(dir / name)) {
            missing.emplace_back(name);
        }
    }
    if (!missing.empty()) {
        std::cerr << "grnevo report: '" << dir.string() << "' is missing";
        for (const auto& m : missing) {
            std::cerr << ' ' << m;
        }
        std::cerr << " (expected summary.csv, trials.csv and trials/<id>/reduction_curve.csv from 'grnevo run')\n";
        return kConfigError;
    }

    try {
        const auto summary = read_csv(dir / "summary.csv");
        const auto trials = read_csv(dir / "trials.csv");
        const auto out_dir = dir / "report";
        std::filesystem::create_directories(out_dir);

        // Robustness counts in bins of ten, with 100 in its own bin.
        std::array<int, 11> bins{};
        int completed = 0;
        int successes = 0;
        for (const auto& t : trials) {
            if (t.at("robustness").empty()) {
                continue;
            }
            const int count = std::stoi(t.at("robustness"));
            ++bins[static_cast<std::size_t>(std::clamp(count / 10, 0, 10))];
            ++completed;
            successes += t.at("success") == "1" ? 1 : 0;
        }
        {
            auto out = open(out_dir / "robustness_histogram.csv");
            out << "bin_low,bin_high,trials\n";
            for (int b = 0; b < 11; ++b) {
                out << b * 10 << ',' << (b == 10 ? 100 : b * 10 + 9) << ',' << bins[static_cast<std::size_t>(b)]
                    << '\n';
            }
        }
        {
            auto out = open(out_dir / "cell_bars.csv");
            out << "problem,method,density,success_rate,mean_interactions,sd_interactions\n";
            for (const auto& c : summary) {
                out << c.at("problem") << ',' << c.at("method") << ',' << c.at("density") << ','
                    << c.at("success_rate") << ',' << c.at("mean_interactions") << ',' << c.at("sd_interactions")
                    << '\n';
            }
        }
        int curves = 0;
        {
            auto out = open(out_dir / "reduction_curves.csv");
            out << "trial,problem,method,density,evaluations,interactions\n";
            for (const auto& t : trials) {
                const auto file = dir / "trials" / t.at("trial") / "reduction_curve.csv";
                if (!std::filesystem::is_regular_file(file)) {
                    continue;
                }
                ++curves;
                for (const auto& point : read_csv(file)) {
                    out << t.at("trial") << ',' << t.at("problem") << ',' << t.at("method") << ',' << t.at("density")
                        << ',' << point.at("evaluations") << ',' << point.at("interactions") << '\n';
                }
            }
        }
        std::cout << completed << " completed trials, " << successes << " successful";
        if (completed > 0) {
            std::cout << " (" << (100 * successes + completed / 2) / completed << "%)";
        }
        std::cout << "; " << curves << " reduction curves\n"
                  << "wrote " << (out_dir / "robustness_histogram.csv").string() << ", "
                  << (out_dir / "cell_bars.csv").string() << ", " << (out_dir / "reduction_curves.csv").string()
                  << '\n';
    }
    catch (const std::exception& e) {
        std::cerr << "grnevo report: " << e.what() << '\n';
        return kIoError;
    }
    return kOk;
}

} // namespace grnevo::cli
