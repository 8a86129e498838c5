#pragma once

#include <span>
#include <utility>
#include <vector>

#include "riskdex/core_model.hpp"

namespace riskdex {

struct PsSummary {
  int ps_id = 0;
  double mean = 0;
  double min = 0;
  double max = 0;
  double range = 0;           // max - min
  double relative_range = 0;  // range over the source-precision mean, signed
};

// Statistics over the 51 non-US entities (or all 52 when exclude_us is
// false). The relative range divides by the mean rounded to the fixtures'
// two decimals, which is how the published table was built.
PsSummary summary_stats(std::span<const double> column, int ps_id, bool exclude_us = true);

// Top k entities by descending value, each with its census-vs-estimates
// relative difference. US is excluded.
std::vector<std::pair<int, double>> top_quintile(const PsMatrix& ps, int ps_id, int k);

double pearson(std::span<const double> x, std::span<const double> y);
double spearman(std::span<const double> x, std::span<const double> y);  // mean ranks on ties

struct WeightStats {
  double mean = 0;
  double min = 0;
  double max = 0;
};

// Per-statistic spread of the scaled weights across the 51 non-US entities.
std::array<WeightStats, kPsCount> weight_profile(const SpsResult& result);

}  // namespace riskdex
