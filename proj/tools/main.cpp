// scalebench command-line front end. All analysis logic lives in the library;
// this file only maps flags onto a RunConfig.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scalebench/cli.hpp"
#include "scalebench/errors.hpp"
#include "scalebench/format.hpp"

namespace {

struct FlagState {
    std::string size = "revenue";
    std::string impact = "emissions";
    std::string level = "sector";
    std::string format = "text";
};

void add_common_flags(CLI::App* cmd, scalebench::RunConfig& config,
                      FlagState& flags) {
    cmd->add_option("input", config.inputs, "input file(s); '-' reads stdin");
    cmd->add_option("--size", flags.size, "size metric")
        ->check(CLI::IsMember({"employees", "marketcap", "assets", "revenue"}));
    cmd->add_option("--impact", flags.impact, "impact metric")
        ->check(CLI::IsMember({"emissions", "energy", "water", "waste"}));
    cmd->add_option("--level", flags.level, "grouping level")
        ->check(CLI::IsMember({"all", "sector", "industry"}));
    cmd->add_option("--min-group", config.min_group_size,
                    "minimum companies per group (default 10)");
    cmd->add_flag("--robust-se", config.robust_se,
                  "HC1 heteroskedasticity-consistent standard errors");
    cmd->add_option("--bootstrap", config.bootstrap.replicates,
                    "bootstrap replicates for slope confidence intervals");
    cmd->add_option("--ci-level", config.bootstrap.level,
                    "bootstrap confidence level (default 0.95)");
    cmd->add_option("--seed", config.bootstrap.seed, "bootstrap seed");
    cmd->add_option("--format", flags.format, "output format")
        ->check(CLI::IsMember({"text", "csv", "json", "svg"}));
    cmd->add_option("--out", config.out, "output path (default stdout)");
    cmd->add_option("--threads", config.threads,
                    "worker threads for group fits and bootstrap");
    cmd->add_flag("!--no-audit", config.audit,
                  "suppress per-record audit JSON lines on stderr");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Power-law scaling benchmarks for corporate environmental "
                 "impact data"};
    app.require_subcommand(1);

    scalebench::RunConfig config;
    FlagState flags;

    CLI::App* fit = app.add_subcommand(
        "fit", "fit per-group log-log scaling relations");
    CLI::App* score = app.add_subcommand(
        "score", "score companies against their group benchmark");
    CLI::App* savings = app.add_subcommand(
        "savings", "aggregate savings under benchmark enforcement");
    CLI::App* rank = app.add_subcommand(
        "rank", "rank size metrics by goodness of fit");
    CLI::App* dispersion = app.add_subcommand(
        "dispersion", "per-country residual statistics");
    CLI::App* synth = app.add_subcommand(
        "synth", "generate a synthetic dataset from a spec JSON");
    CLI::App* report = app.add_subcommand(
        "report", "render tables, scatters, significance counts or coverage");

    for (CLI::App* cmd :
         {fit, score, savings, rank, dispersion, synth, report}) {
        add_common_flags(cmd, config, flags);
    }
    for (CLI::App* cmd : {score, savings, dispersion, report}) {
        cmd->add_option("--fits", config.fits_path,
                        "precomputed fits JSON (from `fit --format json`)");
    }
    savings->add_flag("!--no-fallback-all", config.fallback_all,
                      "do not score skipped groups against the All fit");
    dispersion->add_flag("--pairs", config.map_pairs,
                         "emit only (country, value) pairs for map plotting");
    report->add_option("--kind", config.report_kind,
                       "table|scatter|significant|coverage")
        ->check(CLI::IsMember({"table", "scatter", "significant", "coverage"}));
    report->add_option("--group", config.scatter_group,
                       "group key for --kind scatter");
    report->add_option("--alpha", config.alphas,
                       "significance thresholds for --kind significant");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help and friends
        }
        std::cerr << "{\"error\":\"InvalidArguments\",\"detail\":"
                  << scalebench::json_string(e.what()) << "}\n";
        return 2;
    }

    try {
        config.command = app.get_subcommands().front()->get_name();
        config.selector.size = scalebench::size_metric_from_string(flags.size);
        config.selector.impact =
            scalebench::impact_metric_from_string(flags.impact);
        config.level = scalebench::group_level_from_string(flags.level);
        config.format = flags.format;
    } catch (const scalebench::Error& e) {
        std::cerr << "{\"error\":" << scalebench::json_string(e.code())
                  << ",\"detail\":" << scalebench::json_string(e.what())
                  << "}\n";
        return 2;
    }

    return scalebench::run(config, std::cout, std::cerr);
}
