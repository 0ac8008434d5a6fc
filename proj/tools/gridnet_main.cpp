#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "gridnet/errors.hpp"
#include "gridnet/ingest.hpp"
#include "gridnet/report.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitNumeric = 3;

void print_parse_error(const gridnet::ParseError& ex) {
    std::cerr << "parse error";
    if (ex.line() > 0) std::cerr << " at line " << ex.line();
    if (!ex.field().empty()) std::cerr << " (field " << ex.field() << ")";
    std::cerr << ": " << ex.what() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Topological analysis of electrical distribution grids"};
    app.require_subcommand(1);

    const std::vector<std::string> table_names{"metrics", "weighted", "critical-edges",
                                               "centrality"};

    std::string input;
    std::string out_dir;
    std::string table_after;
    gridnet::AnalyzeOptions options;
    bool no_resilience = false;

    CLI::App* analyze = app.add_subcommand("analyze", "Analyze a grid and write a report bundle");
    analyze->add_option("input", input, "grid directory (nodes.csv + edges.csv) or JSON file")
        ->required();
    analyze->add_option("--out", out_dir, "output directory for bundle.json and the CSV files")
        ->required();
    analyze->add_option("--seed", options.seed, "seed for every randomized analysis");
    analyze->add_flag("--cost", options.with_cost,
                      "compute the trading-cost section (needs ampacity data)");
    analyze->add_option("--baseline-trials", options.baseline_trials,
                        "random-baseline trials per component")
        ->check(CLI::PositiveNumber);
    analyze->add_option("--removal-step", options.removal_step,
                        "fraction of nodes removed per resilience batch")
        ->check(CLI::Range(1e-9, 1.0));
    analyze->add_flag("--no-resilience", no_resilience, "skip the removal simulations");
    analyze->add_option("--table", table_after, "print this table once the analysis finishes")
        ->check(CLI::IsMember(table_names));

    std::string bundle_path;
    std::string table_name;
    CLI::App* table = app.add_subcommand("table", "Render a table from an existing bundle");
    table->add_option("bundle", bundle_path, "bundle.json written by analyze")->required();
    table->add_option("name", table_name, "metrics | weighted | critical-edges | centrality")
        ->required()
        ->check(CLI::IsMember(table_names));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        // --help and --version land here too; keep their exit code 0.
        return app.exit(ex) == 0 ? 0 : kExitParse;
    }

    try {
        if (analyze->parsed()) {
            options.with_resilience = !no_resilience;
            gridnet::GridRecords records = gridnet::load_grid_records(input);
            nlohmann::json bundle = gridnet::build_bundle(records, options);
            gridnet::write_bundle_outputs(bundle, out_dir);
            if (!table_after.empty()) std::cout << gridnet::render_table(bundle, table_after);
        } else {
            std::ifstream in(bundle_path);
            if (!in) {
                std::cerr << "parse error: cannot open " << bundle_path << "\n";
                return kExitParse;
            }
            nlohmann::json bundle;
            try {
                bundle = nlohmann::json::parse(in);
            } catch (const nlohmann::json::exception& ex) {
                std::cerr << "parse error: " << bundle_path << " is not a bundle: " << ex.what()
                          << "\n";
                return kExitParse;
            }
            std::cout << gridnet::render_table(bundle, table_name);
        }
    } catch (const gridnet::ParseError& ex) {
        print_parse_error(ex);
        return kExitParse;
    } catch (const gridnet::ValidationError& ex) {
        std::cerr << "invalid input: " << ex.what() << "\n";
        return kExitParse;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitNumeric;
    }
    return 0;
}
