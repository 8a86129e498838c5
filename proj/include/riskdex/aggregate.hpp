#pragma once

#include <span>

#include "riskdex/ingest.hpp"

namespace riskdex {

// Weighted average of quintile ranks. Rows must be aligned (equal length);
// weights are expected to sum to 1.
double compute_sps(std::span<const int> quintiles, std::span<const double> scaled_weights);

// Each phase's share of the SPS as a percentage; shares sum to 100.
// Rows are full 10-statistic rows aligned with the catalog.
std::array<double, kPhaseCount> decompose(std::span<const int> quintiles,
                                          std::span<const double> scaled_weights);

// Full pipeline for one rule variant: quintiles, zeroing, scaling, SPS and
// phase decomposition for every non-US entity (plus US when the config asks
// for it and enough weights can be derived).
SpsResult run_variant(const DataBundle& bundle, const VariantConfig& cfg);

struct VariantOutcome {
  VariantConfig config;
  std::string name;
  std::array<bool, kEntityCount> computed{};
  std::array<double, kEntityCount> sps{};
  double max_abs_dev = 0;
  double mean_abs_dev = 0;
  double spearman_rho = 0;
  std::vector<int> worst;  // entities with the largest |computed - published|
};

struct ReconciliationReport {
  std::vector<VariantOutcome> variants;
  int best_index = -1;  // smallest max_abs_dev
};

// Deviation statistics of each variant against the published values over
// the 51 non-US entities. Inputs are never mutated.
ReconciliationReport reconcile(const DataBundle& bundle,
                               std::span<const VariantConfig> configs);

// {US in, US out} x {zeroing on, zeroing off}, canonical tie-break.
std::vector<VariantConfig> default_variant_grid();

}  // namespace riskdex
