#include "scalebench/serialize.hpp"

#include <limits>

#include <json.hpp>

#include "scalebench/errors.hpp"
#include "scalebench/format.hpp"

namespace scalebench {

std::string to_json(const FitResult& fit) {
    std::string out = "{";
    out += "\"n\":" + std::to_string(fit.n);
    out += ",\"beta\":" + json_number(fit.beta);
    out += ",\"intercept_ln\":" + json_number(fit.intercept_ln);
    out += ",\"se_beta\":" + json_number(fit.se_beta);
    out += ",\"se_intercept\":" + json_number(fit.se_intercept);
    out += ",\"t_beta\":" + json_number(fit.t_beta);
    out += ",\"p_beta\":" + json_number(fit.p_beta);
    out += ",\"r2\":" + json_number(fit.r2);
    out += ",\"adj_r2\":" + json_number(fit.adj_r2);
    out += ",\"residual_sd\":" + json_number(fit.residual_sd);
    out += ",\"regime\":" + json_string(to_string(fit.regime));
    out += "}";
    return out;
}

std::string to_json(const ConfidenceInterval& ci) {
    return "{\"low\":" + json_number(ci.low) +
           ",\"high\":" + json_number(ci.high) +
           ",\"level\":" + json_number(ci.level) +
           ",\"replicates\":" + std::to_string(ci.replicates) +
           ",\"seed\":" + std::to_string(ci.seed) + "}";
}

std::string to_json(const GroupedFits& grouped) {
    std::string out = "{\"selector\":{\"size\":" +
                      json_string(to_string(grouped.selector.size)) +
                      ",\"impact\":" +
                      json_string(to_string(grouped.selector.impact)) +
                      "},\"level\":" + json_string(to_string(grouped.level)) +
                      ",\"fits\":{";
    bool first = true;
    for (const auto& [key, fit] : grouped.fits) {
        if (!first) out += ',';
        first = false;
        out += json_string(key) + ":" + to_json(fit);
    }
    out += "},\"skipped\":[";
    first = true;
    for (const auto& [key, reason] : grouped.skipped) {
        if (!first) out += ',';
        first = false;
        out += "[" + json_string(key) + "," + json_string(reason) + "]";
    }
    out += "]}";
    return out;
}

std::string to_json(const SavingsReport& report) {
    std::string out = "{\"selector\":{\"size\":" +
                      json_string(to_string(report.selector.size)) +
                      ",\"impact\":" +
                      json_string(to_string(report.selector.impact)) +
                      "},\"level\":" + json_string(to_string(report.level)) +
                      ",\"total_actual\":" + json_number(report.total_actual) +
                      ",\"total_capped\":" + json_number(report.total_capped) +
                      ",\"savings_fraction\":" +
                      json_number(report.savings_fraction) + ",\"per_group\":[";
    bool first = true;
    for (const GroupSavings& g : report.per_group) {
        if (!first) out += ',';
        first = false;
        out += "{\"group\":" + json_string(g.group_key) +
               ",\"actual\":" + json_number(g.actual) +
               ",\"capped\":" + json_number(g.capped) + "}";
    }
    out += "],\"skipped_groups\":[";
    first = true;
    for (const std::string& key : report.skipped_groups) {
        if (!first) out += ',';
        first = false;
        out += json_string(key);
    }
    out += "]}";
    return out;
}

std::string to_json(const CoverageSummary& summary) {
    return "{\"total_impact\":" + json_number(summary.total_impact) +
           ",\"companies\":" + std::to_string(summary.companies) +
           ",\"countries\":" + std::to_string(summary.countries) +
           ",\"industries\":" + std::to_string(summary.industries) +
           ",\"total_employees\":" + json_number(summary.total_employees) +
           ",\"total_revenue\":" + json_number(summary.total_revenue) +
           ",\"total_assets\":" + json_number(summary.total_assets) +
           ",\"total_market_cap\":" + json_number(summary.total_market_cap) +
           "}";
}

std::string to_json(const DispersionResult& dispersion) {
    std::string out =
        "{\"pooled_sd\":" + json_number(dispersion.pooled_sd) +
        ",\"countries\":[";
    bool first = true;
    for (const CountryStats& c : dispersion.countries) {
        if (!first) out += ',';
        first = false;
        out += "{\"country\":" + json_string(c.country) +
               ",\"n\":" + std::to_string(c.n) +
               ",\"mean_residual_ln\":" + json_number(c.mean_residual_ln) +
               ",\"sd_residual_ln\":" + json_number(c.sd_residual_ln) +
               ",\"cv\":" + (c.cv.has_value() ? json_number(*c.cv) : "null") +
               ",\"beyond_one_sd\":" + (c.beyond_one_sd ? "true" : "false") +
               "}";
    }
    out += "],\"unknown_country\":[";
    first = true;
    for (const std::string& id : dispersion.unknown_country) {
        if (!first) out += ',';
        first = false;
        out += json_string(id);
    }
    out += "]}";
    return out;
}

std::string scores_csv(std::span<const BenchmarkScore> scores) {
    std::string out = "company_id,group,size,actual,predicted,residual_ln,ratio\n";
    for (const BenchmarkScore& s : scores) {
        out += csv_field(s.company_id) + ',' + csv_field(s.group_key) + ',' +
               fmt_double(s.size_value) + ',' + fmt_double(s.actual_impact) +
               ',' + fmt_double(s.predicted_impact) + ',' +
               fmt_double(s.residual_ln) + ',' + fmt_double(s.ratio) + '\n';
    }
    return out;
}

std::string scores_json(std::span<const BenchmarkScore> scores) {
    std::string out = "[";
    bool first = true;
    for (const BenchmarkScore& s : scores) {
        if (!first) out += ',';
        first = false;
        out += "{\"company_id\":" + json_string(s.company_id) +
               ",\"group\":" + json_string(s.group_key) +
               ",\"size\":" + json_number(s.size_value) +
               ",\"actual\":" + json_number(s.actual_impact) +
               ",\"predicted\":" + json_number(s.predicted_impact) +
               ",\"residual_ln\":" + json_number(s.residual_ln) +
               ",\"ratio\":" + json_number(s.ratio) + "}";
    }
    out += "]";
    return out;
}

std::string dispersion_csv(const DispersionResult& dispersion) {
    std::string out = "country,n,mean_residual_ln,sd_residual_ln,cv,beyond_one_sd\n";
    for (const CountryStats& c : dispersion.countries) {
        out += csv_field(c.country) + ',' + std::to_string(c.n) + ',' +
               fmt_double(c.mean_residual_ln) + ',' +
               fmt_double(c.sd_residual_ln) + ',' +
               (c.cv.has_value() ? fmt_double(*c.cv) : std::string()) + ',' +
               (c.beyond_one_sd ? "true" : "false") + '\n';
    }
    return out;
}

std::string dispersion_map_pairs_csv(const DispersionResult& dispersion) {
    std::string out = "country,value\n";
    for (const CountryStats& c : dispersion.countries) {
        out += csv_field(c.country) + ',' + fmt_double(c.mean_residual_ln) + '\n';
    }
    return out;
}

namespace {

double number_or_inf(const nlohmann::json& j) {
    if (j.is_null()) return std::numeric_limits<double>::infinity();
    return j.get<double>();
}

FitResult fit_from_json(const nlohmann::json& j) {
    FitResult fit;
    fit.n = j.at("n").get<std::size_t>();
    fit.beta = number_or_inf(j.at("beta"));
    fit.intercept_ln = number_or_inf(j.at("intercept_ln"));
    fit.se_beta = number_or_inf(j.at("se_beta"));
    fit.se_intercept = number_or_inf(j.at("se_intercept"));
    fit.t_beta = number_or_inf(j.at("t_beta"));
    fit.p_beta = number_or_inf(j.at("p_beta"));
    fit.r2 = number_or_inf(j.at("r2"));
    fit.adj_r2 = number_or_inf(j.at("adj_r2"));
    fit.residual_sd = number_or_inf(j.at("residual_sd"));
    fit.regime = regime_from_string(j.at("regime").get<std::string>());
    return fit;
}

}  // namespace

GroupedFits grouped_fits_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("InvalidArgument",
                              std::string("fits file is not valid JSON: ") +
                                  e.what());
    }
    if (j.is_object() && j.contains("result")) j = j.at("result");
    try {
        GroupedFits grouped;
        grouped.selector.size = size_metric_from_string(
            j.at("selector").at("size").get<std::string>());
        grouped.selector.impact = impact_metric_from_string(
            j.at("selector").at("impact").get<std::string>());
        grouped.level = group_level_from_string(j.at("level").get<std::string>());
        for (const auto& [key, fit] : j.at("fits").items()) {
            grouped.fits.emplace(key, fit_from_json(fit));
        }
        if (j.contains("skipped")) {
            for (const auto& item : j.at("skipped")) {
                grouped.skipped.emplace_back(item.at(0).get<std::string>(),
                                             item.at(1).get<std::string>());
            }
        }
        return grouped;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("InvalidArgument",
                              std::string("bad fits payload: ") + e.what());
    }
}

}  // namespace scalebench
