#include "scalebench/records.hpp"

#include "scalebench/errors.hpp"

namespace scalebench {

const std::optional<double>& size_value(const CompanyRecord& r, SizeMetric m) {
    switch (m) {
        case SizeMetric::Employees: return r.employees;
        case SizeMetric::MarketCap: return r.market_cap;
        case SizeMetric::Assets: return r.assets;
        case SizeMetric::Revenue: return r.revenue;
    }
    throw ValidationError("InvalidArgument", "unknown size metric");
}

const std::optional<double>& impact_value(const CompanyRecord& r, ImpactMetric m) {
    switch (m) {
        case ImpactMetric::Emissions: return r.co2e;
        case ImpactMetric::Energy: return r.energy;
        case ImpactMetric::Water: return r.water;
        case ImpactMetric::Waste: return r.waste;
    }
    throw ValidationError("InvalidArgument", "unknown impact metric");
}

std::string_view to_string(SizeMetric m) {
    switch (m) {
        case SizeMetric::Employees: return "employees";
        case SizeMetric::MarketCap: return "marketcap";
        case SizeMetric::Assets: return "assets";
        case SizeMetric::Revenue: return "revenue";
    }
    return "?";
}

std::string_view to_string(ImpactMetric m) {
    switch (m) {
        case ImpactMetric::Emissions: return "emissions";
        case ImpactMetric::Energy: return "energy";
        case ImpactMetric::Water: return "water";
        case ImpactMetric::Waste: return "waste";
    }
    return "?";
}

std::string_view to_string(GroupLevel l) {
    switch (l) {
        case GroupLevel::All: return "all";
        case GroupLevel::Sector: return "sector";
        case GroupLevel::Industry: return "industry";
    }
    return "?";
}

std::string_view to_string(ScalingRegime r) {
    switch (r) {
        case ScalingRegime::Sublinear: return "sublinear";
        case ScalingRegime::Linear: return "linear";
        case ScalingRegime::Superlinear: return "superlinear";
    }
    return "?";
}

std::string_view display_name(SizeMetric m) {
    switch (m) {
        case SizeMetric::Employees: return "Employees";
        case SizeMetric::MarketCap: return "Market Capitalisation";
        case SizeMetric::Assets: return "Assets";
        case SizeMetric::Revenue: return "Total Revenue";
    }
    return "?";
}

std::string_view display_name(ImpactMetric m) {
    switch (m) {
        case ImpactMetric::Emissions: return "CO2e Emissions";
        case ImpactMetric::Energy: return "Energy Use";
        case ImpactMetric::Water: return "Water Withdrawal";
        case ImpactMetric::Waste: return "Waste";
    }
    return "?";
}

SizeMetric size_metric_from_string(std::string_view s) {
    if (s == "employees") return SizeMetric::Employees;
    if (s == "marketcap") return SizeMetric::MarketCap;
    if (s == "assets") return SizeMetric::Assets;
    if (s == "revenue") return SizeMetric::Revenue;
    throw ValidationError("InvalidArgument",
                          "unknown size metric: " + std::string(s));
}

ImpactMetric impact_metric_from_string(std::string_view s) {
    if (s == "emissions") return ImpactMetric::Emissions;
    if (s == "energy") return ImpactMetric::Energy;
    if (s == "water") return ImpactMetric::Water;
    if (s == "waste") return ImpactMetric::Waste;
    throw ValidationError("InvalidArgument",
                          "unknown impact metric: " + std::string(s));
}

GroupLevel group_level_from_string(std::string_view s) {
    if (s == "all") return GroupLevel::All;
    if (s == "sector") return GroupLevel::Sector;
    if (s == "industry") return GroupLevel::Industry;
    throw ValidationError("InvalidArgument",
                          "unknown group level: " + std::string(s));
}

ScalingRegime regime_from_string(std::string_view s) {
    if (s == "sublinear") return ScalingRegime::Sublinear;
    if (s == "linear") return ScalingRegime::Linear;
    if (s == "superlinear") return ScalingRegime::Superlinear;
    throw ValidationError("InvalidArgument",
                          "unknown regime: " + std::string(s));
}

}  // namespace scalebench
