#include "scalebench/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace scalebench {

namespace {

double population_sd(double sum, double sum_sq, std::size_t n) {
    const double dn = static_cast<double>(n);
    const double mean = sum / dn;
    return std::sqrt(std::max(sum_sq / dn - mean * mean, 0.0));
}

}  // namespace

DispersionResult country_dispersion(std::span<const BenchmarkScore> scores,
                                    std::span<const CompanyRecord> records) {
    std::unordered_map<std::string, const std::string*> country_of;
    country_of.reserve(records.size());
    for (const CompanyRecord& r : records) {
        country_of.emplace(r.company_id, &r.country);
    }

    struct Acc {
        std::size_t n = 0;
        double sum_r = 0.0, sum_r2 = 0.0;    // log residuals
        double sum_q = 0.0, sum_q2 = 0.0;    // ratios
    };
    std::map<std::string, Acc> by_country;

    DispersionResult out;
    double pooled_sum = 0.0, pooled_sum_sq = 0.0;
    std::size_t pooled_n = 0;
    for (const BenchmarkScore& s : scores) {
        const auto it = country_of.find(s.company_id);
        if (it == country_of.end() || it->second->empty()) {
            out.unknown_country.push_back(s.company_id);
            continue;
        }
        Acc& acc = by_country[*it->second];
        ++acc.n;
        acc.sum_r += s.residual_ln;
        acc.sum_r2 += s.residual_ln * s.residual_ln;
        acc.sum_q += s.ratio;
        acc.sum_q2 += s.ratio * s.ratio;
        pooled_sum += s.residual_ln;
        pooled_sum_sq += s.residual_ln * s.residual_ln;
        ++pooled_n;
    }

    if (pooled_n > 0) {
        out.pooled_sd = population_sd(pooled_sum, pooled_sum_sq, pooled_n);
    }

    for (const auto& [country, acc] : by_country) {
        CountryStats cs;
        cs.country = country;
        cs.n = acc.n;
        cs.mean_residual_ln = acc.sum_r / static_cast<double>(acc.n);
        cs.sd_residual_ln = population_sd(acc.sum_r, acc.sum_r2, acc.n);
        const double mean_ratio = acc.sum_q / static_cast<double>(acc.n);
        if (std::abs(mean_ratio) >= 1e-12) {
            cs.cv = population_sd(acc.sum_q, acc.sum_q2, acc.n) /
                    std::abs(mean_ratio);
        }
        cs.beyond_one_sd = std::abs(cs.mean_residual_ln) > out.pooled_sd;
        out.countries.push_back(std::move(cs));
    }

    std::sort(out.countries.begin(), out.countries.end(),
              [](const CountryStats& a, const CountryStats& b) {
                  const double ma = std::abs(a.mean_residual_ln);
                  const double mb = std::abs(b.mean_residual_ln);
                  if (ma != mb) return ma > mb;
                  return a.country < b.country;
              });
    return out;
}

}  // namespace scalebench
