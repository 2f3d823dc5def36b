#include "scalebench/synthgen.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include <json.hpp>

#include "scalebench/errors.hpp"
#include "scalebench/format.hpp"
#include "scalebench/rng.hpp"

namespace scalebench {

namespace {

constexpr const char* kCountryRing[4] = {"US", "DE", "JP", "NL"};

void validate_spec(const SyntheticSpec& spec) {
    bool ok = spec.n >= 1 && spec.noise_sd >= 0.0 &&
              std::isfinite(spec.beta_true) &&
              std::isfinite(spec.intercept_ln_true) && !spec.group_key.empty();
    if (ok) {
        if (const auto* p = std::get_if<ParetoDist>(&spec.size_dist)) {
            ok = p->alpha > 0.0 && p->x_min > 0.0;
        } else if (const auto* l = std::get_if<LogNormalDist>(&spec.size_dist)) {
            ok = l->sigma >= 0.0 && std::isfinite(l->mu);
        }
    }
    if (!ok) {
        throw ValidationError("InvalidSpec",
                              "invalid synthetic spec for group '" +
                                  spec.group_key + "'");
    }
}

// Record k draws its size from uniform slots 4k / 4k+1 and its noise from
// slots 4k+2 / 4k+3.
double draw_size(const SizeDist& dist, const CounterRng& rng, std::size_t k) {
    if (const auto* p = std::get_if<ParetoDist>(&dist)) {
        // Inverse CDF: x = x_min * u^(-1/alpha), u in (0, 1].
        const double u = rng.uniform_at(4 * k);
        return p->x_min * std::pow(u, -1.0 / p->alpha);
    }
    const auto& l = std::get<LogNormalDist>(dist);
    return std::exp(l.mu + l.sigma * rng.normal_at(2 * k));
}

void set_pair(CompanyRecord& rec, const SyntheticSpec& spec, double size,
              double impact) {
    switch (spec.size_metric) {
        case SizeMetric::Employees: rec.employees = size; break;
        case SizeMetric::MarketCap: rec.market_cap = size; break;
        case SizeMetric::Assets: rec.assets = size; break;
        case SizeMetric::Revenue: rec.revenue = size; break;
    }
    switch (spec.impact_metric) {
        case ImpactMetric::Emissions: rec.co2e = impact; break;
        case ImpactMetric::Energy: rec.energy = impact; break;
        case ImpactMetric::Water: rec.water = impact; break;
        case ImpactMetric::Waste: rec.waste = impact; break;
    }
}

std::string record_id(const std::string& group_key, std::size_t index) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "-%06zu", index + 1);
    return group_key + buf;
}

SizeDist size_dist_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "pareto") {
        return ParetoDist{j.at("x_min").get<double>(),
                          j.at("alpha").get<double>()};
    }
    if (kind == "lognormal") {
        return LogNormalDist{j.at("mu").get<double>(),
                             j.at("sigma").get<double>()};
    }
    throw ValidationError("InvalidSpec", "unknown size_dist kind: " + kind);
}

SyntheticSpec spec_from_json(const nlohmann::json& j) {
    SyntheticSpec spec;
    spec.n = j.at("n").get<std::size_t>();
    spec.beta_true = j.at("beta_true").get<double>();
    spec.intercept_ln_true = j.at("intercept_ln_true").get<double>();
    spec.noise_sd = j.at("noise_sd").get<double>();
    spec.size_dist = size_dist_from_json(j.at("size_dist"));
    spec.group_key = j.at("group_key").get<std::string>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("size_metric")) {
        spec.size_metric =
            size_metric_from_string(j.at("size_metric").get<std::string>());
    }
    if (j.contains("impact_metric")) {
        spec.impact_metric =
            impact_metric_from_string(j.at("impact_metric").get<std::string>());
    }
    return spec;
}

}  // namespace

std::vector<CompanyRecord> generate_population(const SyntheticSpec& spec) {
    validate_spec(spec);
    const CounterRng rng(spec.seed, 0);
    const double y0 = std::exp(spec.intercept_ln_true);

    std::vector<CompanyRecord> records;
    records.reserve(spec.n);
    for (std::size_t k = 0; k < spec.n; ++k) {
        const double size = draw_size(spec.size_dist, rng, k);
        double impact = y0 * std::pow(size, spec.beta_true);
        if (spec.noise_sd > 0.0) {
            impact *= std::exp(spec.noise_sd * rng.normal_at(2 * k + 1));
        }
        CompanyRecord rec;
        rec.company_id = record_id(spec.group_key, k);
        rec.name = rec.company_id;
        rec.country = kCountryRing[k % 4];
        rec.sector = spec.group_key;
        rec.industry = spec.group_key;
        set_pair(rec, spec, size, impact);
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<CompanyRecord> generate_multigroup(
    std::span<const SyntheticSpec> specs) {
    std::set<std::string> keys;
    for (const SyntheticSpec& spec : specs) {
        if (!keys.insert(spec.group_key).second) {
            throw ValidationError("DuplicateGroupKey",
                                  "duplicate group key: " + spec.group_key);
        }
    }
    std::vector<CompanyRecord> all;
    for (const SyntheticSpec& spec : specs) {
        std::vector<CompanyRecord> part = generate_population(spec);
        all.insert(all.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    }
    return all;
}

std::string records_to_csv(std::span<const CompanyRecord> records) {
    std::string out =
        "company_id,name,country,sector,industry,employees,market_cap_eur,"
        "assets_eur,revenue_eur,co2e_tonnes,energy_gj,water_m3,waste_tonnes\n";
    auto cell = [](const std::optional<double>& v) {
        return v.has_value() ? fmt_double(*v) : std::string();
    };
    for (const CompanyRecord& r : records) {
        out += csv_field(r.company_id);
        out += ',';
        out += csv_field(r.name);
        out += ',';
        out += csv_field(r.country);
        out += ',';
        out += csv_field(r.sector);
        out += ',';
        out += csv_field(r.industry);
        out += ',';
        out += cell(r.employees);
        out += ',';
        out += cell(r.market_cap);
        out += ',';
        out += cell(r.assets);
        out += ',';
        out += cell(r.revenue);
        out += ',';
        out += cell(r.co2e);
        out += ',';
        out += cell(r.energy);
        out += ',';
        out += cell(r.water);
        out += ',';
        out += cell(r.waste);
        out += '\n';
    }
    return out;
}

std::vector<SyntheticSpec> specs_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("InvalidSpec",
                              std::string("spec file is not valid JSON: ") +
                                  e.what());
    }
    try {
        std::vector<SyntheticSpec> specs;
        if (j.is_array()) {
            for (const auto& item : j) specs.push_back(spec_from_json(item));
        } else {
            specs.push_back(spec_from_json(j));
        }
        return specs;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("InvalidSpec",
                              std::string("bad spec field: ") + e.what());
    }
}

}  // namespace scalebench
