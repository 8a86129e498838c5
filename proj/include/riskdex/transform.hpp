#pragma once

#include <span>
#include <vector>

#include "riskdex/core_model.hpp"

namespace riskdex {

struct RankedEntry {
  int entity = 0;
  double value = 0;
  int rank = 0;  // 1..n, ascending by value
};

struct RankedColumn {
  int ps_id = 0;
  bool includes_us = false;
  std::vector<RankedEntry> entries;  // nondecreasing by value
};

// Ascending sort of an entity-indexed column (size 52); ties broken by
// canonical entity order, or its reverse.
RankedColumn rank_entities(std::span<const double> column, bool include_us,
                           TieBreak tie_break = TieBreak::ByCanonicalOrder,
                           int ps_id = 0);

// Positional bucket sizes: 52 entities use 11/10/10/10/11, 51 use the
// configured scheme. Other counts are not defined.
std::array<int, 5> quintile_scheme(int n, const VariantConfig& cfg);

// Per-entity quintile in 1..5; 0 for entities outside the configured set.
std::array<int, kEntityCount> quintile_transform(std::span<const double> column,
                                                 const VariantConfig& cfg);

QuintileMatrix quintile_matrix(const PsMatrix& ps, const VariantConfig& cfg);

struct Derived2010 {
  double value = 0;
  bool inconsistent = false;  // below -0.005, impossible for a percentage
};

Derived2010 derive_2010_component(double component_2020, double difference);

struct AdjustedWeights {
  PsRow weights{};
  std::vector<int> zeroed;  // sorted ps ids whose weight was set to 0
};

// Difference statistics with a negative value get weight 0; level
// statistics are never touched.
AdjustedWeights zero_negative_weights(const PsRow& raw_weights, const PsRow& ps_values);

// Divides by the row sum so the result sums to 1. Throws DomainError on an
// all-zero row.
PsRow scale_weights(const PsRow& weights);

// Share of addresses present in only one of the two address-file snapshots,
// as a percent. Throws DomainError on negative or all-zero counts.
double ps1_from_maf_counts(double deletes, double adds, double common);

}  // namespace riskdex
