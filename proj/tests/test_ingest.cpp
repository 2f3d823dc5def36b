#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "scalebench/errors.hpp"
#include "scalebench/ingest.hpp"
#include "scalebench/synthgen.hpp"

using namespace scalebench;

namespace {

const char* kHeader =
    "company_id,name,country,sector,industry,employees,market_cap_eur,"
    "assets_eur,revenue_eur,co2e_tonnes,energy_gj,water_m3,waste_tonnes\n";

ParseResult parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_dataset(in);
}

CompanyRecord make_record(const std::string& id, const std::string& industry,
                          double revenue, double co2e) {
    CompanyRecord r;
    r.company_id = id;
    r.name = id;
    r.country = "US";
    r.sector = "S1";
    r.industry = industry;
    r.revenue = revenue;
    r.co2e = co2e;
    return r;
}

}  // namespace

TEST_CASE("well-formed row with all numeric fields parses cleanly") {
    const auto result = parse_text(
        std::string(kHeader) +
        "c1,Acme,US,Industrials,Machinery,100,2e6,3e6,4e6,500,600,700,800\n");
    REQUIRE(result.records.size() == 1);
    CHECK(result.errors.empty());
    const CompanyRecord& r = result.records[0];
    CHECK(r.company_id == "c1");
    CHECK(r.employees == 100.0);
    CHECK(r.market_cap == 2e6);
    CHECK(r.assets == 3e6);
    CHECK(r.revenue == 4e6);
    CHECK(r.co2e == 500.0);
    CHECK(r.energy == 600.0);
    CHECK(r.water == 700.0);
    CHECK(r.waste == 800.0);
    CHECK(r.source_row == 2);
}

TEST_CASE("empty cell means missing, zero stays zero") {
    const auto result = parse_text(std::string(kHeader) +
                                   "c1,A,US,S,I,,,,,0,,,\n");
    REQUIRE(result.records.size() == 1);
    CHECK_FALSE(result.records[0].revenue.has_value());
    REQUIRE(result.records[0].co2e.has_value());
    CHECK(result.records[0].co2e == 0.0);
}

TEST_CASE("negative value rejects the row, others unaffected") {
    const auto result = parse_text(std::string(kHeader) +
                                   "c1,A,US,S,I,-5,,,,1,,,\n"
                                   "c2,B,US,S,I,5,,,,1,,,\n");
    REQUIRE(result.records.size() == 1);
    CHECK(result.records[0].company_id == "c2");
    REQUIRE(result.errors.size() == 1);
    CHECK(result.errors[0].reason == "NonPositiveValue");
    CHECK(result.errors[0].row == 2);
}

TEST_CASE("missing required column is fatal and names the column") {
    std::istringstream in("company_id,name,country,sector,industry\nc1,A,US,S,I\n");
    try {
        parse_dataset(in);
        FAIL("expected MissingHeader");
    } catch (const ValidationError& e) {
        CHECK(e.code() == "MissingHeader");
        CHECK(std::string(e.what()).find("employees") != std::string::npos);
    }
}

TEST_CASE("duplicate ids are per-row errors, first occurrence wins") {
    const auto result = parse_text(std::string(kHeader) +
                                   "c1,A,US,S,I,1,,,,1,,,\n"
                                   "c1,B,US,S,I,2,,,,2,,,\n");
    REQUIRE(result.records.size() == 1);
    CHECK(result.records[0].name == "A");
    REQUIRE(result.errors.size() == 1);
    CHECK(result.errors[0].reason == "DuplicateId");
}

TEST_CASE("malformed numbers and field-count mismatches are row errors") {
    const auto result = parse_text(std::string(kHeader) +
                                   "c1,A,US,S,I,12x,,,,1,,,\n"
                                   "c2,A,US,S,I,1,2\n"
                                   "c3,A,US,S,I,nan,,,,1,,,\n");
    CHECK(result.records.empty());
    REQUIRE(result.errors.size() == 3);
    CHECK(result.errors[0].reason == "MalformedNumber");
    CHECK(result.errors[1].reason == "WrongFieldCount");
    CHECK(result.errors[2].reason == "MalformedNumber");
}

TEST_CASE("quoted fields, comment lines and CRLF are handled") {
    const auto result = parse_text(
        "# config {\"command\":\"synth\"}\r\n" + std::string(kHeader) +
        "c1,\"Acme, Inc. \"\"AI\"\"\",US,S,I,1,,,,1,,,\r\n");
    REQUIRE(result.records.size() == 1);
    CHECK(result.records[0].name == "Acme, Inc. \"AI\"");
}

TEST_CASE("header-only input parses to nothing") {
    const auto result = parse_text(kHeader);
    CHECK(result.records.empty());
    CHECK(result.errors.empty());
    CHECK_THROWS_AS(
        build_sample(result.records,
                     MetricSelector{SizeMetric::Revenue, ImpactMetric::Emissions},
                     GroupLevel::All, 10),
        ValidationError);
}

TEST_CASE("groups below min size are dropped whole") {
    // 16 in Machinery, 9 in Airlines: the 9 go out with group_too_small.
    std::vector<CompanyRecord> records;
    for (int i = 0; i < 16; ++i) {
        records.push_back(make_record("m" + std::to_string(i), "Machinery",
                                      1e6 * (i + 1), 100.0 * (i + 1)));
    }
    for (int i = 0; i < 9; ++i) {
        records.push_back(make_record("a" + std::to_string(i), "Airlines",
                                      1e6 * (i + 1), 100.0 * (i + 1)));
    }
    const AnalysisSample sample = build_sample(
        records, MetricSelector{SizeMetric::Revenue, ImpactMetric::Emissions},
        GroupLevel::Industry, 10);
    CHECK(sample.groups.size() == 1);
    CHECK(sample.groups.count("Machinery") == 1);
    CHECK(sample.dropped.size() == 9);
    for (const DroppedRecord& d : sample.dropped) {
        CHECK(d.reason == "group_too_small");
        CHECK(d.company_id[0] == 'a');
    }
    CHECK(sample.included_count() + sample.dropped.size() == records.size());
}

TEST_CASE("zero and missing are distinguished in the audit trail") {
    std::vector<CompanyRecord> records;
    for (int i = 0; i < 5; ++i) {
        records.push_back(make_record("ok" + std::to_string(i), "I",
                                      1e6 * (i + 1), 100.0 * (i + 1)));
    }
    CompanyRecord zero = make_record("zero", "I", 1e6, 0.0);
    CompanyRecord missing = make_record("missing", "I", 1e6, 1.0);
    missing.co2e.reset();
    CompanyRecord no_size = make_record("nosize", "I", 1.0, 1.0);
    no_size.revenue.reset();
    records.push_back(zero);
    records.push_back(missing);
    records.push_back(no_size);

    const AnalysisSample sample = build_sample(
        records, MetricSelector{SizeMetric::Revenue, ImpactMetric::Emissions},
        GroupLevel::Industry, 3);
    REQUIRE(sample.dropped.size() == 3);
    CHECK(sample.dropped[0].company_id == "zero");
    CHECK(sample.dropped[0].reason == "nonpositive_value");
    CHECK(sample.dropped[1].company_id == "missing");
    CHECK(sample.dropped[1].reason == "missing_value");
    CHECK(sample.dropped[2].company_id == "nosize");
    CHECK(sample.dropped[2].reason == "missing_value");
    CHECK(sample.included_count() + sample.dropped.size() == records.size());
}

TEST_CASE("empty group key is audited") {
    std::vector<CompanyRecord> records;
    for (int i = 0; i < 4; ++i) {
        records.push_back(make_record("c" + std::to_string(i), "I", 1e6 + i, 10.0 + i));
    }
    records.push_back(make_record("nokey", "", 1e6, 10.0));
    const AnalysisSample sample = build_sample(
        records, MetricSelector{SizeMetric::Revenue, ImpactMetric::Emissions},
        GroupLevel::Industry, 3);
    REQUIRE(sample.dropped.size() == 1);
    CHECK(sample.dropped[0].reason == "missing_group_key");
}

TEST_CASE("build_sample is idempotent on its own included set") {
    std::vector<CompanyRecord> records;
    for (int i = 0; i < 30; ++i) {
        auto r = make_record("c" + std::to_string(i),
                             i % 2 == 0 ? "IndA" : "IndB", 1e5 * (i + 1),
                             10.0 * (i + 1));
        if (i % 7 == 0) r.co2e = 0.0;
        records.push_back(r);
    }
    const MetricSelector sel{SizeMetric::Revenue, ImpactMetric::Emissions};
    const AnalysisSample first = build_sample(records, sel, GroupLevel::Industry, 5);

    std::vector<CompanyRecord> included;
    for (const CompanyRecord& r : records) {
        bool kept = false;
        for (const auto& [key, members] : first.groups) {
            for (const SamplePoint& m : members) {
                kept = kept || m.company_id == r.company_id;
            }
        }
        if (kept) included.push_back(r);
    }
    const AnalysisSample second = build_sample(included, sel, GroupLevel::Industry, 5);
    CHECK(second.dropped.empty());
    CHECK(second.included_count() == first.included_count());
}

TEST_CASE("All level pools everything under one key") {
    std::vector<CompanyRecord> records =
        generate_population({6529, 0.944, -3.8, 0.5, ParetoDist{1e6, 1.2},
                             "Mixed", 42});
    const AnalysisSample sample = build_sample(
        records, MetricSelector{SizeMetric::Revenue, ImpactMetric::Emissions},
        GroupLevel::All, 10);
    REQUIRE(sample.groups.size() == 1);
    CHECK(sample.groups.begin()->first == all_group_key);
    CHECK(sample.groups.begin()->second.size() == 6529);
}

TEST_CASE("empty results throw EmptySample") {
    std::vector<CompanyRecord> records;
    records.push_back(make_record("only", "I", 1e6, 10.0));
    CHECK_THROWS_AS(
        build_sample(records,
                     MetricSelector{SizeMetric::Revenue, ImpactMetric::Emissions},
                     GroupLevel::Industry, 10),
        ValidationError);
    CHECK_THROWS_AS(
        build_sample(records,
                     MetricSelector{SizeMetric::Revenue, ImpactMetric::Emissions},
                     GroupLevel::Industry, 2),
        ValidationError);  // min_group_size below 3
}

TEST_CASE("build_sample is deterministic") {
    std::vector<CompanyRecord> records = generate_multigroup(
        std::vector<SyntheticSpec>{{50, 0.9, -2.0, 0.3, ParetoDist{1e5, 1.1},
                                    "B", 1},
                                   {50, 1.1, -1.0, 0.3, ParetoDist{1e5, 1.1},
                                    "A", 2}});
    const MetricSelector sel{SizeMetric::Revenue, ImpactMetric::Emissions};
    const AnalysisSample s1 = build_sample(records, sel, GroupLevel::Sector, 10);
    const AnalysisSample s2 = build_sample(records, sel, GroupLevel::Sector, 10);
    REQUIRE(s1.groups.size() == s2.groups.size());
    CHECK(s1.groups.begin()->first == "A");  // sorted keys
    auto it1 = s1.groups.begin();
    auto it2 = s2.groups.begin();
    for (; it1 != s1.groups.end(); ++it1, ++it2) {
        CHECK(it1->first == it2->first);
        REQUIRE(it1->second.size() == it2->second.size());
        for (std::size_t i = 0; i < it1->second.size(); ++i) {
            CHECK(it1->second[i].company_id == it2->second[i].company_id);
        }
    }
}

TEST_CASE("coverage summary on a hand-built trio") {
    std::vector<CompanyRecord> records;
    CompanyRecord a = make_record("a", "I1", 5e6, 10.0);
    a.country = "US";
    a.employees = 100;
    CompanyRecord b = make_record("b", "I1", 3e6, 20.0);
    b.country = "DE";
    CompanyRecord c = make_record("c", "I2", 2e6, 30.0);
    c.country = "US";
    // Not in the emissions sample: no co2e.
    CompanyRecord d = make_record("d", "I9", 9e6, 1.0);
    d.co2e.reset();
    records.insert(records.end(), {a, b, c, d});

    const CoverageSummary cov = coverage_summary(records, ImpactMetric::Emissions);
    CHECK(cov.total_impact == doctest::Approx(60.0));
    CHECK(cov.companies == 3);
    CHECK(cov.countries == 2);
    CHECK(cov.industries == 2);
    CHECK(cov.total_employees == doctest::Approx(100.0));
    CHECK(cov.total_revenue == doctest::Approx(1e7));
}

TEST_CASE("coverage summary of nothing is all zeros") {
    const CoverageSummary cov = coverage_summary({}, ImpactMetric::Water);
    CHECK(cov.total_impact == 0.0);
    CHECK(cov.companies == 0);
    CHECK(cov.countries == 0);
    CHECK(cov.industries == 0);
}
