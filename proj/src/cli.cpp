#include "scalebench/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "scalebench/dispersion.hpp"
#include "scalebench/errors.hpp"
#include "scalebench/format.hpp"
#include "scalebench/report.hpp"
#include "scalebench/serialize.hpp"
#include "scalebench/synthgen.hpp"

namespace scalebench {

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("InputUnreadable", "cannot open input: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit_audit_line(std::ostream& err, std::size_t row, const std::string& id,
                     const std::string& reason) {
    err << "{\"row\":" << row << ",\"company_id\":" << json_string(id)
        << ",\"reason\":" << json_string(reason) << "}\n";
}

struct LoadedData {
    std::vector<CompanyRecord> records;
};

LoadedData load_records(const RunConfig& config, std::ostream& err) {
    if (config.inputs.empty()) {
        throw ValidationError("InvalidArgument", "no input file given");
    }
    LoadedData data;
    std::set<std::string> ids;
    for (const std::string& path : config.inputs) {
        const std::string text = read_input(path);
        std::istringstream stream(text);
        ParseResult parsed = parse_dataset(stream);
        if (config.audit) {
            for (const RowError& e : parsed.errors) {
                emit_audit_line(err, e.row, e.company_id, e.reason);
            }
        }
        for (CompanyRecord& rec : parsed.records) {
            if (!ids.insert(rec.company_id).second) {
                if (config.audit) {
                    emit_audit_line(err, rec.source_row, rec.company_id,
                                    "DuplicateId");
                }
                continue;
            }
            data.records.push_back(std::move(rec));
        }
    }
    return data;
}

AnalysisSample sample_with_audit(const RunConfig& config,
                                 std::span<const CompanyRecord> records,
                                 GroupLevel level, std::ostream& err) {
    AnalysisSample sample =
        build_sample(records, config.selector, level, config.min_group_size);
    if (config.audit) {
        for (const DroppedRecord& d : sample.dropped) {
            emit_audit_line(err, d.row, d.company_id, d.reason);
        }
    }
    return sample;
}

// Output sink: config.out when set, the provided stream otherwise.
class Sink {
public:
    Sink(const RunConfig& config, std::ostream& fallback) {
        if (!config.out.empty()) {
            file_.open(config.out, std::ios::binary);
            if (!file_) {
                throw IoError("OutputUnwritable",
                              "cannot open output: " + config.out);
            }
            stream_ = &file_;
        } else {
            stream_ = &fallback;
        }
    }

    std::ostream& stream() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_ = nullptr;
};

std::string config_comment(const RunConfig& config) {
    return "# config " + to_json(config) + "\n";
}

RenderFormat render_format(const RunConfig& config) {
    if (config.format == "text") return RenderFormat::Text;
    if (config.format == "csv") return RenderFormat::Csv;
    if (config.format == "json") return RenderFormat::Json;
    throw ValidationError("InvalidArgument",
                          "format not supported here: " + config.format);
}

GroupedFits load_or_fit(const RunConfig& config, const AnalysisSample& sample) {
    if (!config.fits_path.empty()) {
        GroupedFits grouped =
            grouped_fits_from_json_text(read_input(config.fits_path));
        if (grouped.selector.size != config.selector.size ||
            grouped.selector.impact != config.selector.impact ||
            grouped.level != config.level) {
            throw ValidationError("MixedMetrics",
                                  "fits file selector/level does not match the "
                                  "requested configuration");
        }
        return grouped;
    }
    return fit_groups(sample, FitOptions{config.robust_se}, config.threads);
}

// All-level fit of the same records, used for the table's "All" row and the
// savings fallback. Returns false when the pooled sample cannot be fitted.
bool try_all_fit(const RunConfig& config, std::span<const CompanyRecord> records,
                 FitResult& out) {
    try {
        AnalysisSample all = build_sample(records, config.selector,
                                          GroupLevel::All,
                                          config.min_group_size);
        GroupedFits grouped =
            fit_groups(all, FitOptions{config.robust_se}, config.threads);
        const auto it = grouped.fits.find(all_group_key);
        if (it == grouped.fits.end()) return false;
        out = it->second;
        return true;
    } catch (const ValidationError&) {
        return false;
    }
}

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

int cmd_fit(const RunConfig& config, std::ostream& out_stream, std::ostream& err) {
    LoadedData data = load_records(config, err);
    AnalysisSample sample =
        sample_with_audit(config, data.records, config.level, err);
    GroupedFits grouped =
        fit_groups(sample, FitOptions{config.robust_se}, config.threads);

    FitResult all_fit;
    bool has_all = false;
    if (config.level != GroupLevel::All) {
        has_all = try_all_fit(config, data.records, all_fit);
    }

    std::map<std::string, ConfidenceInterval> intervals;
    if (config.bootstrap.replicates > 0) {
        for (const auto& [key, fit] : grouped.fits) {
            std::vector<DataPoint> pts;
            for (const SamplePoint& m : sample.groups.at(key)) {
                pts.push_back({m.size, m.impact});
            }
            intervals.emplace(
                key, bootstrap_ci(pts, config.bootstrap.level,
                                  config.bootstrap.replicates,
                                  config.bootstrap.seed,
                                  FitOptions{config.robust_se}, config.threads));
        }
    }

    Sink sink(config, out_stream);
    std::ostream& out = sink.stream();

    if (config.format == "json") {
        out << "{\"config\":" << to_json(config)
            << ",\"result\":" << to_json(grouped) << ",\"all_fit\":"
            << (has_all ? to_json(all_fit) : std::string("null"));
        if (!intervals.empty()) {
            out << ",\"bootstrap\":{";
            bool first = true;
            for (const auto& [key, ci] : intervals) {
                if (!first) out << ',';
                first = false;
                out << json_string(key) << ":" << to_json(ci);
            }
            out << "}";
        }
        out << "}\n";
        return 0;
    }

    // Rendered table (text/csv) with the All row injected like the reference
    // layout.
    GroupedFits table = grouped;
    if (has_all) table.fits.emplace(all_group_key, all_fit);
    std::map<SizeMetric, GroupedFits> by_metric;
    table.selector.size = config.selector.size;
    by_metric.emplace(config.selector.size, std::move(table));

    out << config_comment(config);
    out << render_group_table(by_metric, render_format(config));
    for (const auto& [key, reason] : grouped.skipped) {
        out << "# skipped " << key << " " << reason << "\n";
    }
    for (const auto& [key, ci] : intervals) {
        out << "# bootstrap " << key << " level=" << fmt_double(ci.level)
            << " low=" << fmt_double(ci.low) << " high=" << fmt_double(ci.high)
            << " replicates=" << ci.replicates << " seed=" << ci.seed << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// score
// ---------------------------------------------------------------------------

int cmd_score(const RunConfig& config, std::ostream& out_stream,
              std::ostream& err) {
    LoadedData data = load_records(config, err);
    AnalysisSample sample =
        sample_with_audit(config, data.records, config.level, err);
    GroupedFits grouped = load_or_fit(config, sample);
    ScoringResult scoring = score_companies(sample, grouped);

    for (const auto& [id, key] : scoring.omitted) {
        err << "{\"company_id\":" << json_string(id)
            << ",\"group\":" << json_string(key)
            << ",\"error\":\"GroupNotFitted\"}\n";
    }

    Sink sink(config, out_stream);
    std::ostream& out = sink.stream();
    if (config.format == "json") {
        out << "{\"config\":" << to_json(config)
            << ",\"scores\":" << scores_json(scoring.scores) << "}\n";
    } else {
        out << config_comment(config);
        out << scores_csv(scoring.scores);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// savings
// ---------------------------------------------------------------------------

int cmd_savings(const RunConfig& config, std::ostream& out_stream,
                std::ostream& err) {
    LoadedData data = load_records(config, err);
    AnalysisSample sample =
        sample_with_audit(config, data.records, config.level, err);
    GroupedFits grouped = load_or_fit(config, sample);

    // Skipped-group members fall back onto the whole-sample benchmark so the
    // totals keep covering them.
    if (config.fallback_all && config.level != GroupLevel::All) {
        std::vector<std::string> unfitted;
        for (const auto& [key, members] : sample.groups) {
            if (grouped.fits.find(key) == grouped.fits.end()) {
                unfitted.push_back(key);
            }
        }
        FitResult all_fit;
        if (!unfitted.empty() && try_all_fit(config, data.records, all_fit)) {
            std::vector<SamplePoint> pooled;
            for (const std::string& key : unfitted) {
                auto node = sample.groups.extract(key);
                for (SamplePoint& m : node.mapped()) {
                    pooled.push_back(std::move(m));
                }
            }
            if (!pooled.empty()) {
                sample.groups[all_group_key] = std::move(pooled);
                grouped.fits.emplace(all_group_key, all_fit);
                // Re-bucketed groups are covered now, not excluded.
                std::erase_if(grouped.skipped, [&](const auto& entry) {
                    return std::find(unfitted.begin(), unfitted.end(),
                                     entry.first) != unfitted.end();
                });
            }
        }
    }

    SavingsReport report = savings(sample, grouped);

    Sink sink(config, out_stream);
    std::ostream& out = sink.stream();
    if (config.format == "json") {
        out << "{\"config\":" << to_json(config)
            << ",\"result\":" << to_json(report) << "}\n";
        return 0;
    }
    out << config_comment(config);
    if (config.format == "csv") {
        out << "group,actual,capped\n";
        for (const GroupSavings& g : report.per_group) {
            out << csv_field(g.group_key) << ',' << fmt_double(g.actual) << ','
                << fmt_double(g.capped) << '\n';
        }
        out << "__total__," << fmt_double(report.total_actual) << ','
            << fmt_double(report.total_capped) << '\n';
        out << "# savings_fraction " << fmt_double(report.savings_fraction)
            << "\n";
        return 0;
    }
    out << "savings for " << to_string(config.selector.impact) << " vs "
        << to_string(config.selector.size) << " at " << to_string(config.level)
        << " level\n";
    out << "total_actual     " << fmt_double(report.total_actual) << "\n";
    out << "total_capped     " << fmt_double(report.total_capped) << "\n";
    out << "savings_fraction " << fmt_double(report.savings_fraction) << "\n";
    for (const GroupSavings& g : report.per_group) {
        out << "  " << g.group_key << "  actual=" << fmt_double(g.actual)
            << "  capped=" << fmt_double(g.capped) << "\n";
    }
    if (!report.skipped_groups.empty()) {
        out << "skipped groups:";
        for (const std::string& key : report.skipped_groups) out << " " << key;
        out << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// rank
// ---------------------------------------------------------------------------

int cmd_rank(const RunConfig& config, std::ostream& out_stream,
             std::ostream& err) {
    LoadedData data = load_records(config, err);
    const std::vector<MetricRanking> ranking =
        rank_size_metrics(data.records, config.selector.impact, config.level,
                          config.min_group_size, FitOptions{config.robust_se});

    Sink sink(config, out_stream);
    std::ostream& out = sink.stream();
    if (config.format == "json") {
        out << "{\"config\":" << to_json(config) << ",\"ranking\":[";
        bool first = true;
        for (const MetricRanking& r : ranking) {
            if (!first) out << ',';
            first = false;
            out << "{\"size_metric\":" << json_string(to_string(r.metric))
                << ",\"mean_adj_r2\":" << json_number(r.mean_adj_r2)
                << ",\"significant_share\":" << json_number(r.significant_share)
                << ",\"groups_fitted\":" << r.groups_fitted << "}";
        }
        out << "]}\n";
        return 0;
    }
    out << config_comment(config);
    if (config.format == "csv") {
        out << "rank,size_metric,mean_adj_r2,significant_share,groups_fitted\n";
        for (std::size_t i = 0; i < ranking.size(); ++i) {
            const MetricRanking& r = ranking[i];
            out << (i + 1) << ',' << to_string(r.metric) << ','
                << fmt_double(r.mean_adj_r2) << ','
                << fmt_double(r.significant_share) << ',' << r.groups_fitted
                << '\n';
        }
        return 0;
    }
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        const MetricRanking& r = ranking[i];
        out << (i + 1) << ". " << to_string(r.metric)
            << "  mean_adj_r2=" << fmt_fixed(r.mean_adj_r2, 3)
            << "  significant@0.001=" << fmt_fixed(r.significant_share, 3)
            << "  groups=" << r.groups_fitted << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// dispersion
// ---------------------------------------------------------------------------

int cmd_dispersion(const RunConfig& config, std::ostream& out_stream,
                   std::ostream& err) {
    LoadedData data = load_records(config, err);
    AnalysisSample sample =
        sample_with_audit(config, data.records, config.level, err);
    GroupedFits grouped = load_or_fit(config, sample);
    ScoringResult scoring = score_companies(sample, grouped);
    DispersionResult dispersion =
        country_dispersion(scoring.scores, data.records);

    for (const std::string& id : dispersion.unknown_country) {
        err << "{\"company_id\":" << json_string(id)
            << ",\"error\":\"UnknownCountry\"}\n";
    }

    Sink sink(config, out_stream);
    std::ostream& out = sink.stream();
    if (config.format == "json") {
        out << "{\"config\":" << to_json(config)
            << ",\"result\":" << to_json(dispersion) << "}\n";
        return 0;
    }
    out << config_comment(config);
    if (config.map_pairs) {
        out << dispersion_map_pairs_csv(dispersion);
        return 0;
    }
    if (config.format == "csv") {
        out << "# pooled_sd " << fmt_double(dispersion.pooled_sd) << "\n";
        out << dispersion_csv(dispersion);
        return 0;
    }
    out << "pooled residual SD: " << fmt_double(dispersion.pooled_sd) << "\n";
    out << "country  n  mean_residual_ln  sd_residual_ln  cv  beyond_one_sd\n";
    for (const CountryStats& c : dispersion.countries) {
        out << c.country << "  " << c.n << "  " << fmt_fixed(c.mean_residual_ln, 4)
            << "  " << fmt_fixed(c.sd_residual_ln, 4) << "  "
            << (c.cv.has_value() ? fmt_fixed(*c.cv, 4) : std::string("-"))
            << "  " << (c.beyond_one_sd ? "yes" : "no") << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

int cmd_synth(const RunConfig& config, std::ostream& out_stream,
              std::ostream& /*err*/) {
    if (config.inputs.size() != 1) {
        throw ValidationError("InvalidArgument",
                              "synth takes exactly one spec JSON input");
    }
    const std::vector<SyntheticSpec> specs =
        specs_from_json_text(read_input(config.inputs[0]));
    const std::vector<CompanyRecord> records = generate_multigroup(specs);

    Sink sink(config, out_stream);
    std::ostream& out = sink.stream();
    out << config_comment(config);
    out << records_to_csv(records);
    return 0;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

int cmd_report(const RunConfig& config, std::ostream& out_stream,
               std::ostream& err) {
    LoadedData data = load_records(config, err);

    if (config.report_kind == "coverage") {
        const CoverageSummary summary =
            coverage_summary(data.records, config.selector.impact);
        Sink sink(config, out_stream);
        std::ostream& out = sink.stream();
        if (config.format == "json") {
            out << "{\"config\":" << to_json(config)
                << ",\"result\":" << to_json(summary) << "}\n";
            return 0;
        }
        out << config_comment(config);
        if (config.format == "csv") {
            out << "total_impact,companies,countries,industries,total_employees,"
                   "total_revenue,total_assets,total_market_cap\n"
                << fmt_double(summary.total_impact) << ',' << summary.companies
                << ',' << summary.countries << ',' << summary.industries << ','
                << fmt_double(summary.total_employees) << ','
                << fmt_double(summary.total_revenue) << ','
                << fmt_double(summary.total_assets) << ','
                << fmt_double(summary.total_market_cap) << '\n';
            return 0;
        }
        out << "coverage for " << to_string(config.selector.impact) << "\n"
            << "total impact       " << fmt_double(summary.total_impact) << "\n"
            << "companies          " << summary.companies << "\n"
            << "countries          " << summary.countries << "\n"
            << "industries         " << summary.industries << "\n"
            << "total employees    " << fmt_double(summary.total_employees)
            << "\n"
            << "total revenue      " << fmt_double(summary.total_revenue) << "\n"
            << "total assets       " << fmt_double(summary.total_assets) << "\n"
            << "total market cap   " << fmt_double(summary.total_market_cap)
            << "\n";
        return 0;
    }

    if (config.report_kind == "scatter") {
        if (config.scatter_group.empty()) {
            throw ValidationError("InvalidArgument",
                                  "scatter needs --group <key>");
        }
        AnalysisSample sample =
            sample_with_audit(config, data.records, config.level, err);
        const auto group = sample.groups.find(config.scatter_group);
        if (group == sample.groups.end()) {
            throw ValidationError("GroupNotFitted",
                                  "group not in sample: " + config.scatter_group);
        }
        GroupedFits grouped = load_or_fit(config, sample);
        const auto fit = grouped.fits.find(config.scatter_group);
        if (fit == grouped.fits.end()) {
            throw ValidationError("GroupNotFitted",
                                  "group not fitted: " + config.scatter_group);
        }
        const ScatterBundle bundle =
            make_scatter(config.scatter_group, group->second, fit->second,
                         data.records, config.selector);

        Sink sink(config, out_stream);
        std::ostream& out = sink.stream();
        if (config.format == "svg") {
            std::string svg = scatter_svg(bundle);
            // Config echo as an XML comment after the declaration line.
            const std::size_t eol = svg.find('\n');
            svg.insert(eol + 1, "<!-- config " + to_json(config) + " -->\n");
            out << svg;
            return 0;
        }
        if (config.format == "json") {
            out << "{\"config\":" << to_json(config)
                << ",\"group\":" << json_string(bundle.group_key)
                << ",\"fit\":" << to_json(bundle.fit) << ",\"line\":{\"x1\":"
                << json_number(bundle.line_x1)
                << ",\"y1\":" << json_number(bundle.line_y1)
                << ",\"x2\":" << json_number(bundle.line_x2)
                << ",\"y2\":" << json_number(bundle.line_y2) << "},\"points\":[";
            bool first = true;
            for (const ScatterPoint& p : bundle.points) {
                if (!first) out << ',';
                first = false;
                out << "{\"company_id\":" << json_string(p.company_id)
                    << ",\"ln_size\":" << json_number(p.ln_size)
                    << ",\"ln_impact\":" << json_number(p.ln_impact)
                    << ",\"flag\":" << json_string(p.flag) << "}";
            }
            out << "]}\n";
            return 0;
        }
        out << config_comment(config);
        out << scatter_csv(bundle);
        return 0;
    }

    if (config.report_kind == "significant") {
        AnalysisSample sample =
            sample_with_audit(config, data.records, config.level, err);
        GroupedFits grouped =
            fit_groups(sample, FitOptions{config.robust_se}, config.threads);
        const auto counts = count_significant(grouped.fits, config.alphas);

        Sink sink(config, out_stream);
        std::ostream& out = sink.stream();
        if (config.format == "json") {
            out << "{\"config\":" << to_json(config) << ",\"total\":"
                << grouped.fits.size() << ",\"counts\":[";
            bool first = true;
            for (const auto& [alpha, count] : counts) {
                if (!first) out << ',';
                first = false;
                out << "{\"alpha\":" << json_number(alpha)
                    << ",\"count\":" << count << "}";
            }
            out << "]}\n";
            return 0;
        }
        out << config_comment(config);
        if (config.format == "csv") {
            out << "alpha,count,total\n";
            for (const auto& [alpha, count] : counts) {
                out << fmt_double(alpha) << ',' << count << ','
                    << grouped.fits.size() << '\n';
            }
            return 0;
        }
        for (const auto& [alpha, count] : counts) {
            out << "significant at " << fmt_double(alpha) << ": " << count
                << " of " << grouped.fits.size() << "\n";
        }
        return 0;
    }

    if (config.report_kind != "table") {
        throw ValidationError("InvalidArgument",
                              "unknown report kind: " + config.report_kind);
    }

    // Full table: one block per size metric that yields a fittable sample.
    std::map<SizeMetric, GroupedFits> by_metric;
    for (SizeMetric metric : table_size_order) {
        RunConfig metric_config = config;
        metric_config.selector.size = metric;
        try {
            AnalysisSample sample = build_sample(
                data.records, metric_config.selector, config.level,
                config.min_group_size);
            GroupedFits grouped = fit_groups(
                sample, FitOptions{config.robust_se}, config.threads);
            if (config.level != GroupLevel::All) {
                FitResult all_fit;
                if (try_all_fit(metric_config, data.records, all_fit)) {
                    grouped.fits.emplace(all_group_key, all_fit);
                }
            }
            by_metric.emplace(metric, std::move(grouped));
        } catch (const ValidationError&) {
            continue;  // metric absent from this dataset
        }
    }
    if (by_metric.empty()) {
        throw ValidationError("EmptySample",
                              "no size metric yields a fittable sample");
    }

    Sink sink(config, out_stream);
    std::ostream& out = sink.stream();
    if (config.format == "json") {
        out << "{\"config\":" << to_json(config) << ",\"result\":"
            << render_group_table(by_metric, RenderFormat::Json) << "}\n";
        return 0;
    }
    out << config_comment(config);
    out << render_group_table(by_metric, render_format(config));
    return 0;
}

}  // namespace

std::string to_json(const RunConfig& config) {
    std::string out = "{\"command\":" + json_string(config.command) +
                      ",\"inputs\":[";
    for (std::size_t i = 0; i < config.inputs.size(); ++i) {
        if (i > 0) out += ',';
        out += json_string(config.inputs[i]);
    }
    out += "],\"size\":" + json_string(to_string(config.selector.size));
    out += ",\"impact\":" + json_string(to_string(config.selector.impact));
    out += ",\"level\":" + json_string(to_string(config.level));
    out += ",\"min_group\":" + std::to_string(config.min_group_size);
    out += std::string(",\"robust_se\":") +
           (config.robust_se ? "true" : "false");
    out += ",\"bootstrap\":{\"replicates\":" +
           std::to_string(config.bootstrap.replicates) +
           ",\"level\":" + json_number(config.bootstrap.level) +
           ",\"seed\":" + std::to_string(config.bootstrap.seed) + "}";
    out += ",\"format\":" + json_string(config.format);
    out += ",\"fits\":" + json_string(config.fits_path);
    out += ",\"kind\":" + json_string(config.report_kind);
    out += ",\"group\":" + json_string(config.scatter_group);
    out += ",\"alphas\":[";
    for (std::size_t i = 0; i < config.alphas.size(); ++i) {
        if (i > 0) out += ',';
        out += json_number(config.alphas[i]);
    }
    out += "]";
    out += std::string(",\"map_pairs\":") + (config.map_pairs ? "true" : "false");
    out += std::string(",\"fallback_all\":") +
           (config.fallback_all ? "true" : "false");
    out += "}";
    return out;
}

RunConfig run_config_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("InvalidArgument",
                              std::string("config is not valid JSON: ") +
                                  e.what());
    }
    try {
        RunConfig config;
        config.command = j.at("command").get<std::string>();
        config.inputs = j.at("inputs").get<std::vector<std::string>>();
        config.selector.size =
            size_metric_from_string(j.at("size").get<std::string>());
        config.selector.impact =
            impact_metric_from_string(j.at("impact").get<std::string>());
        config.level = group_level_from_string(j.at("level").get<std::string>());
        config.min_group_size = j.at("min_group").get<std::size_t>();
        config.robust_se = j.at("robust_se").get<bool>();
        config.bootstrap.replicates =
            j.at("bootstrap").at("replicates").get<std::size_t>();
        config.bootstrap.level = j.at("bootstrap").at("level").get<double>();
        config.bootstrap.seed =
            j.at("bootstrap").at("seed").get<std::uint64_t>();
        config.format = j.at("format").get<std::string>();
        config.fits_path = j.at("fits").get<std::string>();
        config.report_kind = j.at("kind").get<std::string>();
        config.scatter_group = j.at("group").get<std::string>();
        config.alphas = j.at("alphas").get<std::vector<double>>();
        config.map_pairs = j.at("map_pairs").get<bool>();
        config.fallback_all = j.at("fallback_all").get<bool>();
        return config;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("InvalidArgument",
                              std::string("bad config field: ") + e.what());
    }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.command == "fit") return cmd_fit(config, out, err);
        if (config.command == "score") return cmd_score(config, out, err);
        if (config.command == "savings") return cmd_savings(config, out, err);
        if (config.command == "rank") return cmd_rank(config, out, err);
        if (config.command == "dispersion") {
            return cmd_dispersion(config, out, err);
        }
        if (config.command == "synth") return cmd_synth(config, out, err);
        if (config.command == "report") return cmd_report(config, out, err);
        throw ValidationError("InvalidArgument",
                              "unknown command: " + config.command);
    } catch (const ValidationError& e) {
        err << "{\"error\":" << json_string(e.code())
            << ",\"detail\":" << json_string(e.what()) << "}\n";
        return 2;
    } catch (const IoError& e) {
        err << "{\"error\":" << json_string(e.code())
            << ",\"detail\":" << json_string(e.what()) << "}\n";
        return 1;
    } catch (const std::exception& e) {
        err << "{\"error\":\"Internal\",\"detail\":" << json_string(e.what())
            << "}\n";
        return 1;
    }
}

}  // namespace scalebench
