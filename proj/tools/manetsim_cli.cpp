#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <manetsim/manetsim.hpp>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw manetsim::ConfigError("file", "cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic ad hoc routing simulator"};
    app.require_subcommand(1);

    std::string target;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    CLI::App* run_cmd = app.add_subcommand("run", "execute a scenario file or preset");
    run_cmd->add_option("scenario", target, "scenario file or preset name")->required();
    CLI::Option* seed_opt = run_cmd->add_option("--seed", seed, "override the scenario seed");
    run_cmd->add_option("--out", out_dir, "directory for the CSV series (default .)");

    std::string csv_a;
    std::string csv_b;
    CLI::App* cmp_cmd = app.add_subcommand("compare", "compare two run CSV files");
    cmp_cmd->add_option("csvA", csv_a, "first CSV")->required();
    cmp_cmd->add_option("csvB", csv_b, "second CSV")->required();

    app.add_subcommand("presets", "list built-in scenario presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run_cmd->parsed()) {
            manetsim::Scenario sc = manetsim::is_preset(target)
                                        ? manetsim::make_preset(target)
                                        : manetsim::load_scenario_file(target);
            if (seed_opt->count() > 0) {
                sc.seed = seed;
            }
            manetsim::Simulation sim(std::move(sc));
            const manetsim::RunResult result = sim.run();
            std::filesystem::create_directories(out_dir);
            const std::filesystem::path csv_path =
                std::filesystem::path(out_dir) /
                (result.scenario_name + "_seed" + std::to_string(result.seed) + ".csv");
            std::ofstream out(csv_path, std::ios::binary);
            if (!out) {
                throw manetsim::ConfigError("out", "cannot write '" + csv_path.string() + "'");
            }
            out << result.csv;
            std::cout << result.summary << "csv: " << csv_path.string() << "\n";
        } else if (cmp_cmd->parsed()) {
            const manetsim::MetricSeries a = manetsim::parse_metrics_csv(slurp(csv_a));
            const manetsim::MetricSeries b = manetsim::parse_metrics_csv(slurp(csv_b));
            std::cout << manetsim::compare_series(a, b, csv_a, csv_b);
        } else {
            for (const auto& [name, description] : manetsim::preset_catalog()) {
                std::cout << name << "\n    " << description << "\n";
            }
        }
    } catch (const manetsim::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
