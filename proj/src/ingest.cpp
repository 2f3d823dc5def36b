#include "scalebench/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "scalebench/errors.hpp"

namespace scalebench {

namespace {

// Splits one CSV line. Quoted fields may contain commas; "" inside quotes is
// a literal quote. Embedded newlines are not supported.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

struct NumberParse {
    std::optional<double> value;
    bool malformed = false;
    bool negative = false;
};

NumberParse parse_optional_number(const std::string& text) {
    NumberParse out;
    if (text.empty()) return out;  // empty cell = missing
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
        out.malformed = true;
        return out;
    }
    if (v < 0.0) {
        out.negative = true;
        return out;
    }
    out.value = v;
    return out;
}

}  // namespace

ParseResult parse_dataset(std::istream& input, const ColumnSchema& schema) {
    ParseResult result;
    std::string line;
    std::size_t line_no = 0;

    // Header (skipping leading comment lines).
    std::vector<std::string> header;
    while (std::getline(input, line)) {
        ++line_no;
        line = strip_cr(line);
        if (!line.empty() && line[0] == '#') continue;
        header = split_csv_line(line);
        break;
    }
    if (header.empty()) {
        throw ValidationError("MissingHeader", "input has no header row");
    }

    std::unordered_map<std::string, std::size_t> col_index;
    for (std::size_t i = 0; i < header.size(); ++i) col_index.emplace(header[i], i);

    auto require = [&](const std::string& name) -> std::size_t {
        auto it = col_index.find(name);
        if (it == col_index.end()) {
            throw ValidationError("MissingHeader",
                                  "required column absent: " + name);
        }
        return it->second;
    };

    const std::size_t c_id = require(schema.company_id);
    const std::size_t c_name = require(schema.name);
    const std::size_t c_country = require(schema.country);
    const std::size_t c_sector = require(schema.sector);
    const std::size_t c_industry = require(schema.industry);
    const struct {
        std::size_t col;
        std::optional<double> CompanyRecord::* field;
    } numeric_cols[] = {
        {require(schema.employees), &CompanyRecord::employees},
        {require(schema.market_cap), &CompanyRecord::market_cap},
        {require(schema.assets), &CompanyRecord::assets},
        {require(schema.revenue), &CompanyRecord::revenue},
        {require(schema.co2e), &CompanyRecord::co2e},
        {require(schema.energy), &CompanyRecord::energy},
        {require(schema.water), &CompanyRecord::water},
        {require(schema.waste), &CompanyRecord::waste},
    };

    std::unordered_set<std::string> seen_ids;
    while (std::getline(input, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            result.errors.push_back({line_no, "", "WrongFieldCount"});
            continue;
        }

        CompanyRecord rec;
        rec.source_row = line_no;
        rec.company_id = fields[c_id];
        if (rec.company_id.empty()) {
            result.errors.push_back({line_no, "", "EmptyId"});
            continue;
        }
        if (!seen_ids.insert(rec.company_id).second) {
            result.errors.push_back({line_no, rec.company_id, "DuplicateId"});
            continue;
        }
        rec.name = fields[c_name];
        rec.country = fields[c_country];
        rec.sector = fields[c_sector];
        rec.industry = fields[c_industry];

        bool bad = false;
        for (const auto& nc : numeric_cols) {
            const NumberParse parsed = parse_optional_number(fields[nc.col]);
            if (parsed.malformed) {
                result.errors.push_back({line_no, rec.company_id, "MalformedNumber"});
                bad = true;
                break;
            }
            if (parsed.negative) {
                result.errors.push_back(
                    {line_no, rec.company_id, "NonPositiveValue"});
                bad = true;
                break;
            }
            rec.*nc.field = parsed.value;
        }
        if (bad) {
            seen_ids.erase(rec.company_id);  // a later row may carry the id validly
            continue;
        }
        result.records.push_back(std::move(rec));
    }
    return result;
}

std::size_t AnalysisSample::included_count() const {
    std::size_t n = 0;
    for (const auto& [key, members] : groups) n += members.size();
    return n;
}

AnalysisSample build_sample(std::span<const CompanyRecord> records,
                            MetricSelector selector, GroupLevel level,
                            std::size_t min_group_size) {
    if (min_group_size < 3) {
        throw ValidationError("InvalidArgument",
                              "min_group_size must be at least 3");
    }

    AnalysisSample sample;
    sample.selector = selector;
    sample.level = level;

    auto group_key = [&](const CompanyRecord& r) -> const std::string* {
        static const std::string all_key = all_group_key;
        switch (level) {
            case GroupLevel::All: return &all_key;
            case GroupLevel::Sector: return r.sector.empty() ? nullptr : &r.sector;
            case GroupLevel::Industry:
                return r.industry.empty() ? nullptr : &r.industry;
        }
        return nullptr;
    };

    auto usable = [](const std::optional<double>& v, std::string& reason) {
        if (!v.has_value()) {
            reason = "missing_value";
            return false;
        }
        if (!(*v > 0.0) || !std::isfinite(*v)) {
            reason = "nonpositive_value";
            return false;
        }
        return true;
    };

    for (const CompanyRecord& r : records) {
        const std::string* key = group_key(r);
        if (key == nullptr) {
            sample.dropped.push_back({r.source_row, r.company_id, "missing_group_key"});
            continue;
        }
        std::string reason;
        if (!usable(size_value(r, selector.size), reason) ||
            !usable(impact_value(r, selector.impact), reason)) {
            sample.dropped.push_back({r.source_row, r.company_id, reason});
            continue;
        }
        sample.groups[*key].push_back(
            {r.company_id, *size_value(r, selector.size),
             *impact_value(r, selector.impact), r.source_row});
    }

    // Whole-group drops, in key order.
    for (auto it = sample.groups.begin(); it != sample.groups.end();) {
        if (it->second.size() < min_group_size) {
            for (const SamplePoint& p : it->second) {
                sample.dropped.push_back(
                    {p.source_row, p.company_id, "group_too_small"});
            }
            it = sample.groups.erase(it);
        } else {
            ++it;
        }
    }

    if (sample.groups.empty()) {
        throw ValidationError("EmptySample", "no group survives filtering");
    }
    return sample;
}

CoverageSummary coverage_summary(std::span<const CompanyRecord> records,
                                 ImpactMetric impact) {
    CoverageSummary out;
    std::set<std::string> countries, industries;
    for (const CompanyRecord& r : records) {
        const std::optional<double>& v = impact_value(r, impact);
        if (!v.has_value() || !(*v > 0.0) || !std::isfinite(*v)) continue;
        out.total_impact += *v;
        ++out.companies;
        if (!r.country.empty()) countries.insert(r.country);
        if (!r.industry.empty()) industries.insert(r.industry);
        auto add = [](double& sum, const std::optional<double>& f) {
            if (f.has_value() && *f > 0.0 && std::isfinite(*f)) sum += *f;
        };
        add(out.total_employees, r.employees);
        add(out.total_revenue, r.revenue);
        add(out.total_assets, r.assets);
        add(out.total_market_cap, r.market_cap);
    }
    out.countries = countries.size();
    out.industries = industries.size();
    return out;
}

}  // namespace scalebench
