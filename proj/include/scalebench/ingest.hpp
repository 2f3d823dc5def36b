#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "scalebench/records.hpp"

namespace scalebench {

inline constexpr std::size_t default_min_group_size = 10;

// Logical field -> column name. Every mapped column must be present in the
// header; unmapped extra columns are ignored.
struct ColumnSchema {
    std::string company_id = "company_id";
    std::string name = "name";
    std::string country = "country";
    std::string sector = "sector";
    std::string industry = "industry";
    std::string employees = "employees";
    std::string market_cap = "market_cap_eur";
    std::string assets = "assets_eur";
    std::string revenue = "revenue_eur";
    std::string co2e = "co2e_tonnes";
    std::string energy = "energy_gj";
    std::string water = "water_m3";
    std::string waste = "waste_tonnes";
};

// One rejected input row. `row` is the 1-based physical line number in the
// input (the header is line 1, comment lines count).
struct RowError {
    std::size_t row = 0;
    std::string company_id;
    std::string reason;  // DuplicateId, MalformedNumber, NonPositiveValue, ...
};

struct ParseResult {
    std::vector<CompanyRecord> records;
    std::vector<RowError> errors;
};

// Parses the comma-delimited company table. UTF-8, dot decimal separator
// only, empty field = missing, minimal quoting ("" escapes a quote, fields
// may contain commas; embedded newlines are not supported). Lines starting
// with '#' before the header are skipped, so emitted files that carry a
// config line ingest cleanly.
//
// Every data row yields exactly one CompanyRecord or one RowError. A missing
// mapped column throws ValidationError MissingHeader.
ParseResult parse_dataset(std::istream& input, const ColumnSchema& schema = {});

struct SamplePoint {
    std::string company_id;
    double size = 0.0;
    double impact = 0.0;
    std::size_t source_row = 0;
};

struct DroppedRecord {
    std::size_t row = 0;
    std::string company_id;
    std::string reason;  // missing_value, nonpositive_value, ...
};

// Filtered, grouped (size, impact) pairs ready for fitting. Group keys are
// lexicographically ordered; members keep input order. dropped + included
// partition the input records exactly.
struct AnalysisSample {
    MetricSelector selector;
    GroupLevel level = GroupLevel::All;
    std::map<std::string, std::vector<SamplePoint>> groups;
    std::vector<DroppedRecord> dropped;

    std::size_t included_count() const;
};

// Key used for the single group at GroupLevel::All.
inline constexpr const char* all_group_key = "All";

// Applies the analysis filters: records missing the selected metrics or with
// non-positive values are dropped (reasons missing_value / nonpositive_value,
// checked on the size metric first, then the impact metric), records with an
// empty group key are dropped (missing_group_key), and surviving groups
// smaller than min_group_size are dropped whole (group_too_small, in key
// order).
//
// Throws ValidationError: EmptySample when no group survives, InvalidArgument
// when min_group_size < 3.
AnalysisSample build_sample(std::span<const CompanyRecord> records,
                            MetricSelector selector, GroupLevel level,
                            std::size_t min_group_size = default_min_group_size);

// Dataset totals over the records admitted to the impact metric's analysis
// sample (positive, finite impact value). Size sums skip missing fields;
// country/industry counts are of distinct non-empty values.
struct CoverageSummary {
    double total_impact = 0.0;
    std::size_t companies = 0;
    std::size_t countries = 0;
    std::size_t industries = 0;
    double total_employees = 0.0;
    double total_revenue = 0.0;
    double total_assets = 0.0;
    double total_market_cap = 0.0;
};

CoverageSummary coverage_summary(std::span<const CompanyRecord> records,
                                 ImpactMetric impact);

}  // namespace scalebench
