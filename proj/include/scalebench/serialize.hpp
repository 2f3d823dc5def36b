#pragma once

#include <span>
#include <string>
#include <vector>

#include "scalebench/benchmark.hpp"
#include "scalebench/dispersion.hpp"
#include "scalebench/ingest.hpp"
#include "scalebench/regress.hpp"

namespace scalebench {

// JSON emission is hand-rolled: fixed field order, numbers with 17
// significant digits so every double round-trips, non-finite values as null.

std::string to_json(const FitResult& fit);
std::string to_json(const ConfidenceInterval& ci);
std::string to_json(const GroupedFits& grouped);
std::string to_json(const SavingsReport& report);
std::string to_json(const CoverageSummary& summary);
std::string to_json(const DispersionResult& dispersion);

// Flat spreadsheet view of scores:
// company_id,group,size,actual,predicted,residual_ln,ratio
std::string scores_csv(std::span<const BenchmarkScore> scores);
std::string scores_json(std::span<const BenchmarkScore> scores);

std::string dispersion_csv(const DispersionResult& dispersion);

// Two-column (country, mean log residual) pairs for external map plotting.
std::string dispersion_map_pairs_csv(const DispersionResult& dispersion);

// Accepts the to_json(GroupedFits) shape; also tolerates a wrapper object
// with the payload under "result" (the fit command's JSON output). null
// numbers deserialize to infinity (exact-fit t statistics).
GroupedFits grouped_fits_from_json_text(const std::string& text);

}  // namespace scalebench
