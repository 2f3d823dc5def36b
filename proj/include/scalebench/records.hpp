#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace scalebench {

enum class SizeMetric { Employees, MarketCap, Assets, Revenue };
enum class ImpactMetric { Emissions, Energy, Water, Waste };

// All = one pooled group; Sector = level-1 classification; Industry = level-2.
enum class GroupLevel { All, Sector, Industry };

enum class ScalingRegime { Sublinear, Linear, Superlinear };

struct MetricSelector {
    SizeMetric size = SizeMetric::Revenue;
    ImpactMetric impact = ImpactMetric::Emissions;
};

// One company-year observation. Metric fields are absent when the source cell
// was empty; zeros are kept at parse time and filtered out by build_sample.
struct CompanyRecord {
    std::string company_id;
    std::string name;
    std::string country;   // ISO-3166 alpha-2
    std::string sector;    // level-1 classification group
    std::string industry;  // level-2 classification group
    std::optional<double> employees;
    std::optional<double> market_cap;  // EUR
    std::optional<double> assets;      // EUR
    std::optional<double> revenue;     // EUR
    std::optional<double> co2e;        // tonnes CO2-equivalent
    std::optional<double> energy;      // GJ
    std::optional<double> water;       // m3
    std::optional<double> waste;       // tonnes
    std::size_t source_row = 0;        // 1-based input line, 0 if not file-born
};

const std::optional<double>& size_value(const CompanyRecord& r, SizeMetric m);
const std::optional<double>& impact_value(const CompanyRecord& r, ImpactMetric m);

// Lowercase identifiers used in CLI flags, CSV headers and JSON payloads.
std::string_view to_string(SizeMetric m);
std::string_view to_string(ImpactMetric m);
std::string_view to_string(GroupLevel l);
std::string_view to_string(ScalingRegime r);

// Human-facing column/axis labels for rendered tables and plots.
std::string_view display_name(SizeMetric m);
std::string_view display_name(ImpactMetric m);

SizeMetric size_metric_from_string(std::string_view s);
ImpactMetric impact_metric_from_string(std::string_view s);
GroupLevel group_level_from_string(std::string_view s);
ScalingRegime regime_from_string(std::string_view s);

// Column order of rendered tables.
inline constexpr std::array<SizeMetric, 4> table_size_order = {
    SizeMetric::Employees, SizeMetric::MarketCap, SizeMetric::Assets,
    SizeMetric::Revenue};

// Tie-break preference when ranking size metrics.
inline constexpr std::array<SizeMetric, 4> rank_tiebreak_order = {
    SizeMetric::Revenue, SizeMetric::Employees, SizeMetric::Assets,
    SizeMetric::MarketCap};

}  // namespace scalebench
