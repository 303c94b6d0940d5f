#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "genesis/harness.hpp"

namespace {

genesis::Config load_config(const std::string& config_path) {
    genesis::Config cfg = genesis::Config::defaults();
    if (!config_path.empty()) cfg.apply(genesis::IniFile::load(config_path));
    return cfg;
}

genesis::Algorithm parse_algorithm(const std::string& name) {
    const auto algo = genesis::algorithm_from_string(name);
    if (!algo)
        throw CLI::ValidationError("--algorithm",
                                   "unknown algorithm '" + name +
                                       "' (expected genesis, bega100, bega2000 or gda)");
    return *algo;
}

void print_record(const genesis::RunRecord& rec) {
    std::cout << rec.algorithm << ' ' << rec.scenario << " seed=" << rec.seed
              << (rec.converged ? " converged" : " not-converged")
              << " generations=" << rec.generations_used
              << " ar=" << genesis::format_double(rec.final_acceptance_ratio)
              << " latency_ms=" << genesis::format_double(rec.final_avg_latency_ms)
              << " evals=" << rec.evals_surrogate << '+' << rec.evals_online
              << " wall_ms=" << genesis::format_double(rec.wall_ms) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-objective service chain embedding via neuroevolution"};
    app.require_subcommand(1);

    // run
    std::string run_scenario;
    std::string run_algorithm;
    std::uint64_t run_seed = 1;
    std::string run_config;
    std::string run_out = "results";
    auto* run_cmd = app.add_subcommand("run", "Run one algorithm on one scenario");
    run_cmd->add_option("--scenario", run_scenario, "Scenario name, e.g. 32_1_A_10_2");
    run_cmd->add_option("--algorithm", run_algorithm, "genesis | bega100 | bega2000 | gda");
    run_cmd->add_option("--seed", run_seed, "Run seed")->default_val(1);
    run_cmd->add_option("--config", run_config, "Config or manifest file");
    run_cmd->add_option("--out", run_out, "Results directory")->default_val("results");

    // grid
    std::string grid_algorithm;
    std::vector<std::uint64_t> grid_seeds{1};
    std::string grid_config;
    std::string grid_out = "results";
    auto* grid_cmd = app.add_subcommand("grid", "Sweep all 48 scenarios");
    grid_cmd->add_option("--algorithm", grid_algorithm, "genesis | bega100 | bega2000 | gda")
        ->required();
    grid_cmd->add_option("--seed", grid_seeds, "Seed list")->default_val(std::vector<std::uint64_t>{1});
    grid_cmd->add_option("--config", grid_config, "Config file");
    grid_cmd->add_option("--out", grid_out, "Results directory")->default_val("results");

    // report
    std::string report_in;
    auto* report_cmd = app.add_subcommand("report", "Summarise run records");
    report_cmd->add_option("--in", report_in, "Results directory")->required();

    // dump-topology
    int dump_k = 4;
    double dump_bw = 10.0, dump_cpu = 1.0, dump_mem = 5.0, dump_delay = 0.1;
    std::string dump_out;
    auto* dump_cmd = app.add_subcommand("dump-topology", "Write a fat tree as an edge list");
    dump_cmd->add_option("--k", dump_k, "Fat-tree arity")->default_val(4);
    dump_cmd->add_option("--bandwidth", dump_bw, "Link bandwidth MB/s")->default_val(10.0);
    dump_cmd->add_option("--cpu", dump_cpu, "Host CPU units")->default_val(1.0);
    dump_cmd->add_option("--memory", dump_mem, "Host memory GB")->default_val(5.0);
    dump_cmd->add_option("--delay", dump_delay, "Link delay ms")->default_val(0.1);
    dump_cmd->add_option("--out", dump_out, "Output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            genesis::Config cfg = load_config(run_config);
            // A manifest doubles as a config: its [run] section supplies any
            // triple member not given on the command line.
            std::string scenario_name = run_scenario;
            std::string algorithm_name = run_algorithm;
            bool seed_from_cli = run_cmd->count("--seed") > 0;
            if (!run_config.empty()) {
                const genesis::IniFile ini = genesis::IniFile::load(run_config);
                if (scenario_name.empty())
                    if (auto v = ini.get("run", "scenario")) scenario_name = *v;
                if (algorithm_name.empty())
                    if (auto v = ini.get("run", "algorithm")) algorithm_name = *v;
                if (!seed_from_cli)
                    if (auto v = ini.get("run", "seed")) run_seed = std::stoull(*v);
            }
            if (scenario_name.empty())
                throw CLI::ValidationError("--scenario", "scenario required");
            if (algorithm_name.empty())
                throw CLI::ValidationError("--algorithm", "algorithm required");
            const genesis::Scenario scenario = genesis::Scenario::parse(scenario_name);
            const genesis::Algorithm algorithm = parse_algorithm(algorithm_name);
            const genesis::RunRecord rec =
                genesis::run(scenario, algorithm, run_seed, cfg, run_out);
            print_record(rec);
            return 0;
        }
        if (*grid_cmd) {
            genesis::Config cfg = load_config(grid_config);
            const genesis::Algorithm algorithm = parse_algorithm(grid_algorithm);
            for (const genesis::Scenario& scenario : genesis::scenario_grid())
                for (std::uint64_t seed : grid_seeds)
                    print_record(genesis::run(scenario, algorithm, seed, cfg, grid_out));
            return 0;
        }
        if (*report_cmd) {
            const std::vector<genesis::RunRecord> records = genesis::collect_records(report_in);
            const std::vector<genesis::ReportRow> rows = genesis::report(records);
            genesis::write_report_table(rows, std::cout);
            std::ofstream csv(std::filesystem::path(report_in) / "report.csv");
            genesis::write_report_csv(rows, csv);
            return 0;
        }
        if (*dump_cmd) {
            const genesis::Topology topo =
                genesis::generate_fat_tree(dump_k, dump_cpu, dump_bw, dump_mem, dump_delay);
            if (dump_out.empty()) {
                genesis::dump_edge_list(topo, std::cout);
            } else {
                std::ofstream os(dump_out);
                genesis::dump_edge_list(topo, os);
            }
            return 0;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
