#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scalebench/cli.hpp"
#include "scalebench/ingest.hpp"
#include "scalebench/serialize.hpp"
#include "scalebench/synthgen.hpp"

using namespace scalebench;
namespace fs = std::filesystem;

namespace {

// Scratch directory shared by the suite, unique per process.
fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("scalebench_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
    const fs::path path = scratch_dir() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path.string();
}

struct RunOutput {
    int exit_code = 0;
    std::string out;
    std::string err;
};

RunOutput run_config(const RunConfig& config) {
    std::ostringstream out, err;
    RunOutput result;
    result.exit_code = run(config, out, err);
    result.out = out.str();
    result.err = err.str();
    return result;
}

// Ten-sector fixture shaped like the reference tables.
std::string ten_sector_csv_path() {
    static const std::string path = [] {
        const double betas[] = {0.80, 0.85, 0.90, 0.94, 0.97,
                                1.00, 1.05, 1.10, 1.14, 1.25};
        std::vector<SyntheticSpec> specs;
        for (std::size_t i = 0; i < 10; ++i) {
            specs.push_back({80, betas[i], -2.0, 0.4, ParetoDist{1e6, 1.2},
                             "Sector" + std::to_string(i),
                             static_cast<std::uint64_t>(400 + i)});
        }
        return write_file("ten_sectors.csv",
                          records_to_csv(generate_multigroup(specs)));
    }();
    return path;
}

RunConfig base_config(const std::string& command, const std::string& input) {
    RunConfig config;
    config.command = command;
    config.inputs = {input};
    config.audit = false;
    return config;
}

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) {
        if (c == '\n') ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("fit renders ten sector rows plus an All row") {
    RunConfig config = base_config("fit", ten_sector_csv_path());
    const RunOutput result = run_config(config);
    REQUIRE(result.exit_code == 0);
    CHECK(result.out.find("\nAll ") != std::string::npos);
    for (int i = 0; i < 10; ++i) {
        CHECK(result.out.find("Sector" + std::to_string(i)) != std::string::npos);
    }
    CHECK(result.out.find("* p<0.05, **p<0.01, ***p<0.001\n") !=
          std::string::npos);
    // config line + title + 2 header rows + 11 data rows + footnote.
    CHECK(count_lines(result.out) == 16);
}

TEST_CASE("fit JSON round-trips through the fits reader") {
    RunConfig config = base_config("fit", ten_sector_csv_path());
    config.format = "json";
    const RunOutput result = run_config(config);
    REQUIRE(result.exit_code == 0);
    const GroupedFits grouped = grouped_fits_from_json_text(result.out);
    CHECK(grouped.fits.size() == 10);
    CHECK(grouped.level == GroupLevel::Sector);

    // Byte-for-byte re-serialization of every fit.
    const nlohmann::json parsed = nlohmann::json::parse(result.out);
    const GroupedFits again = grouped_fits_from_json_text(parsed.dump());
    CHECK(to_json(grouped) == to_json(again));
}

TEST_CASE("savings via --fits reproduces the hand fixture exactly") {
    const std::string csv = write_file(
        "hand3.csv",
        "company_id,name,country,sector,industry,employees,market_cap_eur,"
        "assets_eur,revenue_eur,co2e_tonnes,energy_gj,water_m3,waste_tonnes\n"
        "a,A,US,S,S,,,,10,20,,,\n"
        "b,B,US,S,S,,,,10,10,,,\n"
        "c,C,US,S,S,,,,10,5,,,\n");

    GroupedFits line;
    line.selector = {SizeMetric::Revenue, ImpactMetric::Emissions};
    line.level = GroupLevel::Sector;
    FitResult fit;
    fit.n = 3;
    fit.beta = 1.0;
    fit.intercept_ln = 0.0;
    fit.regime = ScalingRegime::Linear;
    line.fits.emplace("S", fit);
    const std::string fits_path = write_file("hand3_fits.json", to_json(line));

    RunConfig config = base_config("savings", csv);
    config.min_group_size = 3;
    config.fits_path = fits_path;
    config.format = "json";
    const RunOutput result = run_config(config);
    REQUIRE(result.exit_code == 0);

    const nlohmann::json parsed = nlohmann::json::parse(result.out);
    const double fraction = parsed["result"]["savings_fraction"].get<double>();
    CHECK(std::abs(fraction - 2.0 / 7.0) <= 1e-12);
    CHECK(parsed["result"]["total_actual"].get<double>() == 35.0);
    CHECK(parsed["result"]["total_capped"].get<double>() == 25.0);

    // The text rendering carries the same number.
    config.format = "text";
    const RunOutput text = run_config(config);
    CHECK(text.out.find("0.2857142857142857") != std::string::npos);
}

TEST_CASE("savings fallback re-buckets unfittable groups onto the All line") {
    // Sector "Flat" is degenerate (one shared size); its members are scored
    // against the whole-sample fit instead of dropping out of the totals.
    std::string csv =
        "company_id,name,country,sector,industry,employees,market_cap_eur,"
        "assets_eur,revenue_eur,co2e_tonnes,energy_gj,water_m3,waste_tonnes\n";
    for (int i = 0; i < 10; ++i) {
        csv += "flat" + std::to_string(i) + ",F,US,Flat,Flat,,,,1000," +
               std::to_string(100 + 17 * i) + ",,,\n";
    }
    for (int i = 0; i < 10; ++i) {
        const double revenue = 500.0 * (i + 1);
        csv += "vary" + std::to_string(i) + ",V,US,Vary,Vary,,,," +
               std::to_string(revenue) + "," + std::to_string(revenue * 0.1) +
               ",,,\n";
    }
    const std::string path = write_file("fallback.csv", csv);

    RunConfig config = base_config("savings", path);
    config.format = "json";
    const RunOutput result = run_config(config);
    REQUIRE(result.exit_code == 0);
    const nlohmann::json parsed = nlohmann::json::parse(result.out);
    CHECK(parsed["result"]["skipped_groups"].empty());
    bool has_all_bucket = false;
    for (const auto& g : parsed["result"]["per_group"]) {
        if (g["group"] == "All") has_all_bucket = true;
    }
    CHECK(has_all_bucket);

    // Without the fallback the degenerate group is excluded and reported.
    config.fallback_all = false;
    const RunOutput strict = run_config(config);
    REQUIRE(strict.exit_code == 0);
    const nlohmann::json strict_parsed = nlohmann::json::parse(strict.out);
    REQUIRE(strict_parsed["result"]["skipped_groups"].size() == 1);
    CHECK(strict_parsed["result"]["skipped_groups"][0] == "Flat");
    CHECK(strict_parsed["result"]["total_actual"].get<double>() <
          parsed["result"]["total_actual"].get<double>());
}

TEST_CASE("missing required column exits 2 and names the column") {
    const std::string bad = write_file(
        "bad.csv", "company_id,name,country,sector,industry\nx,X,US,S,I\n");
    const RunOutput result = run_config(base_config("fit", bad));
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("\"error\":\"MissingHeader\"") != std::string::npos);
    CHECK(result.err.find("employees") != std::string::npos);
}

TEST_CASE("unreadable input exits 1") {
    const RunOutput result =
        run_config(base_config("fit", "/nonexistent/nowhere.csv"));
    CHECK(result.exit_code == 1);
    CHECK(result.err.find("InputUnreadable") != std::string::npos);
}

TEST_CASE("empty sample exits 2") {
    const std::string tiny = write_file(
        "tiny.csv",
        "company_id,name,country,sector,industry,employees,market_cap_eur,"
        "assets_eur,revenue_eur,co2e_tonnes,energy_gj,water_m3,waste_tonnes\n"
        "a,A,US,S,I,,,,5,7,,,\n");
    const RunOutput result = run_config(base_config("fit", tiny));
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("EmptySample") != std::string::npos);
}

TEST_CASE("config echo replays to identical bytes") {
    RunConfig config = base_config("fit", ten_sector_csv_path());
    const RunOutput first = run_config(config);
    REQUIRE(first.exit_code == 0);

    // Extract the echoed config and rebuild the run from it.
    REQUIRE(first.out.rfind("# config ", 0) == 0);
    const std::string json_line =
        first.out.substr(9, first.out.find('\n') - 9);
    RunConfig replay = run_config_from_json_text(json_line);
    replay.audit = false;
    const RunOutput second = run_config(replay);
    CHECK(second.exit_code == 0);
    CHECK(first.out == second.out);
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
    RunConfig config = base_config("fit", ten_sector_csv_path());
    config.format = "json";
    config.bootstrap = {150, 0.9, 99};
    const RunOutput a = run_config(config);
    const RunOutput b = run_config(config);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"bootstrap\":{") != std::string::npos);

    config.threads = 3;
    const RunOutput c = run_config(config);
    CHECK(a.out == c.out);

    config.threads = 1;
    config.format = "text";
    const RunOutput text = run_config(config);
    CHECK(text.out.find("# bootstrap Sector0 level=0.9") != std::string::npos);
    CHECK(text.out == run_config(config).out);
}

TEST_CASE("synth emits a parseable, reproducible dataset") {
    const std::string spec = write_file("spec.json", R"([
        {"n": 25, "beta_true": 0.9, "intercept_ln_true": -1.0, "noise_sd": 0.2,
         "size_dist": {"kind": "pareto", "x_min": 1e6, "alpha": 1.2},
         "group_key": "A", "seed": 11},
        {"n": 25, "beta_true": 1.1, "intercept_ln_true": -2.0, "noise_sd": 0.2,
         "size_dist": {"kind": "lognormal", "mu": 13.0, "sigma": 1.0},
         "group_key": "B", "seed": 12}])");
    RunConfig config = base_config("synth", spec);
    const RunOutput result = run_config(config);
    REQUIRE(result.exit_code == 0);
    CHECK(result.out == run_config(config).out);

    std::istringstream in(result.out);
    const ParseResult parsed = parse_dataset(in);
    CHECK(parsed.errors.empty());
    CHECK(parsed.records.size() == 50);
}

TEST_CASE("score emits the flat CSV contract") {
    RunConfig config = base_config("score", ten_sector_csv_path());
    config.format = "csv";
    const RunOutput result = run_config(config);
    REQUIRE(result.exit_code == 0);
    CHECK(result.out.find(
              "company_id,group,size,actual,predicted,residual_ln,ratio\n") !=
          std::string::npos);
    CHECK(count_lines(result.out) == 2 + 800);  // config + header + rows
}

TEST_CASE("score rejects a fits file for a different level") {
    RunConfig fit_config = base_config("fit", ten_sector_csv_path());
    fit_config.format = "json";
    const RunOutput fits = run_config(fit_config);
    const std::string fits_path = write_file("mismatch_fits.json", fits.out);

    // The fixture's industry strings equal its sector strings, so the sample
    // builds either way; only the fits file's recorded level disagrees.
    RunConfig config = base_config("score", ten_sector_csv_path());
    config.fits_path = fits_path;
    config.level = GroupLevel::Industry;
    const RunOutput result = run_config(config);
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("MixedMetrics") != std::string::npos);
}

TEST_CASE("dispersion runs the full pipeline") {
    RunConfig config = base_config("dispersion", ten_sector_csv_path());
    config.format = "csv";
    const RunOutput result = run_config(config);
    REQUIRE(result.exit_code == 0);
    CHECK(result.out.find("# pooled_sd ") != std::string::npos);
    CHECK(result.out.find("country,n,mean_residual_ln") != std::string::npos);
    // The synthetic country ring has four entries.
    CHECK(count_lines(result.out) == 3 + 4);

    config.map_pairs = true;
    const RunOutput pairs = run_config(config);
    REQUIRE(pairs.exit_code == 0);
    CHECK(pairs.out.find("country,value\n") != std::string::npos);
    CHECK(count_lines(pairs.out) == 2 + 4);
}

TEST_CASE("rank orders metrics on the fixture") {
    RunConfig config = base_config("rank", ten_sector_csv_path());
    config.format = "json";
    const RunOutput result = run_config(config);
    REQUIRE(result.exit_code == 0);
    const nlohmann::json parsed = nlohmann::json::parse(result.out);
    REQUIRE(parsed["ranking"].size() == 1);  // fixture only carries revenue
    CHECK(parsed["ranking"][0]["size_metric"] == "revenue");
}

TEST_CASE("report scatter emits SVG with the config comment") {
    RunConfig config = base_config("report", ten_sector_csv_path());
    config.report_kind = "scatter";
    config.scatter_group = "Sector3";
    config.format = "svg";
    const RunOutput result = run_config(config);
    REQUIRE(result.exit_code == 0);
    CHECK(result.out.rfind("<?xml", 0) == 0);
    CHECK(result.out.find("<!-- config {\"command\":\"report\"") !=
          std::string::npos);
    CHECK(result.out.find("</svg>") != std::string::npos);

    config.scatter_group = "NoSuchGroup";
    const RunOutput missing = run_config(config);
    CHECK(missing.exit_code == 2);
    CHECK(missing.err.find("GroupNotFitted") != std::string::npos);
}

TEST_CASE("report significant counts thresholds") {
    RunConfig config = base_config("report", ten_sector_csv_path());
    config.report_kind = "significant";
    config.format = "json";
    const RunOutput result = run_config(config);
    REQUIRE(result.exit_code == 0);
    const nlohmann::json parsed = nlohmann::json::parse(result.out);
    CHECK(parsed["total"] == 10);
    REQUIRE(parsed["counts"].size() == 3);
    CHECK(parsed["counts"][0]["count"].get<std::size_t>() >=
          parsed["counts"][2]["count"].get<std::size_t>());
}

TEST_CASE("report coverage summarizes the dataset") {
    RunConfig config = base_config("report", ten_sector_csv_path());
    config.report_kind = "coverage";
    config.format = "json";
    const RunOutput result = run_config(config);
    REQUIRE(result.exit_code == 0);
    const nlohmann::json parsed = nlohmann::json::parse(result.out);
    CHECK(parsed["result"]["companies"] == 800);
    CHECK(parsed["result"]["countries"] == 4);
    CHECK(parsed["result"]["industries"] == 10);
}

TEST_CASE("report table spans the available metric blocks") {
    RunConfig config = base_config("report", ten_sector_csv_path());
    const RunOutput result = run_config(config);
    REQUIRE(result.exit_code == 0);
    CHECK(result.out.find("Total Revenue") != std::string::npos);
    CHECK(result.out.find("\nAll ") != std::string::npos);
}

TEST_CASE("audit lines document every dropped record") {
    const std::string csv = write_file(
        "audit.csv",
        "company_id,name,country,sector,industry,employees,market_cap_eur,"
        "assets_eur,revenue_eur,co2e_tonnes,energy_gj,water_m3,waste_tonnes\n"
        "a,A,US,S,I,,,,10,20,,,\n"
        "b,B,US,S,I,,,,10,0,,,\n"
        "c,C,US,S,I,,,,10,30,,,\n"
        "d,D,US,S,I,,,,10,40,,,\n"
        "e,E,US,S,I,,,,-1,40,,,\n");
    RunConfig config = base_config("fit", csv);
    config.level = GroupLevel::Industry;
    config.min_group_size = 3;
    config.audit = true;
    const RunOutput result = run_config(config);
    REQUIRE(result.exit_code == 0);
    CHECK(result.err.find("\"reason\":\"NonPositiveValue\"") !=
          std::string::npos);
    CHECK(result.err.find("\"company_id\":\"b\",\"reason\":"
                          "\"nonpositive_value\"") != std::string::npos);
}

TEST_CASE("multiple inputs merge with cross-file id dedup") {
    const char* header =
        "company_id,name,country,sector,industry,employees,market_cap_eur,"
        "assets_eur,revenue_eur,co2e_tonnes,energy_gj,water_m3,waste_tonnes\n";
    std::string first(header), second(header);
    for (int i = 0; i < 12; ++i) {
        first += "a" + std::to_string(i) + ",A,US,S,S,,,," +
                 std::to_string(100.0 * (i + 1)) + "," +
                 std::to_string(10.0 * (i + 1)) + ",,,\n";
    }
    second += "a3,DUP,US,S,S,,,,999,999,,,\n";  // collides with file one
    for (int i = 0; i < 12; ++i) {
        second += "b" + std::to_string(i) + ",B,US,T,T,,,," +
                  std::to_string(200.0 * (i + 1)) + "," +
                  std::to_string(30.0 * (i + 1)) + ",,,\n";
    }
    const std::string p1 = write_file("merge1.csv", first);
    const std::string p2 = write_file("merge2.csv", second);

    RunConfig config = base_config("fit", p1);
    config.inputs.push_back(p2);
    config.audit = true;
    config.format = "json";
    const RunOutput result = run_config(config);
    REQUIRE(result.exit_code == 0);
    CHECK(result.err.find("\"company_id\":\"a3\",\"reason\":\"DuplicateId\"") !=
          std::string::npos);
    const GroupedFits grouped = grouped_fits_from_json_text(result.out);
    REQUIRE(grouped.fits.size() == 2);
    CHECK(grouped.fits.at("S").n == 12);  // the duplicate did not join
    CHECK(grouped.fits.at("T").n == 12);
}

TEST_CASE("output path writing and unwritable path errors") {
    const std::string out_path = (scratch_dir() / "table.txt").string();
    RunConfig config = base_config("fit", ten_sector_csv_path());
    config.out = out_path;
    const RunOutput result = run_config(config);
    REQUIRE(result.exit_code == 0);
    CHECK(result.out.empty());
    std::ifstream in(out_path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str().find("\nAll ") != std::string::npos);

    config.out = "/nonexistent_dir_zzz/out.txt";
    const RunOutput bad = run_config(config);
    CHECK(bad.exit_code == 1);
    CHECK(bad.err.find("OutputUnwritable") != std::string::npos);
}
