#include "riskdex/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace riskdex {

RankedColumn rank_entities(std::span<const double> column, bool include_us,
                           TieBreak tie_break, int ps_id) {
  if (column.size() != kEntityCount)
    throw DomainError("rank_entities expects a 52-entity column");

  RankedColumn out;
  out.ps_id = ps_id;
  out.includes_us = include_us;
  std::vector<int> order;
  order.reserve(kEntityCount);
  for (int e = include_us ? 0 : 1; e < kEntityCount; ++e) order.push_back(e);

  const bool rev = tie_break == TieBreak::ByReverseCanonical;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (column[a] != column[b]) return column[a] < column[b];
    return rev ? a > b : a < b;
  });

  out.entries.reserve(order.size());
  int rank = 0;
  for (int e : order) out.entries.push_back({e, column[e], ++rank});
  return out;
}

std::array<int, 5> quintile_scheme(int n, const VariantConfig& cfg) {
  if (n == kEntityCount) return {11, 10, 10, 10, 11};
  if (n == kStateCount) {
    cfg.check_valid();
    return cfg.quintile_n51_scheme;
  }
  throw DomainError("no quintile scheme for " + std::to_string(n) + " entities");
}

std::array<int, kEntityCount> quintile_transform(std::span<const double> column,
                                                 const VariantConfig& cfg) {
  RankedColumn ranked =
      rank_entities(column, cfg.include_us_in_quintiles, cfg.tie_break);
  auto scheme = quintile_scheme(static_cast<int>(ranked.entries.size()), cfg);

  std::array<int, kEntityCount> q{};
  size_t pos = 0;
  for (int bucket = 1; bucket <= 5; ++bucket)
    for (int i = 0; i < scheme[bucket - 1]; ++i) q[ranked.entries[pos++].entity] = bucket;
  return q;
}

QuintileMatrix quintile_matrix(const PsMatrix& ps, const VariantConfig& cfg) {
  QuintileMatrix m;
  m.includes_us = cfg.include_us_in_quintiles;
  for (int p = 1; p <= kPsCount; ++p) {
    auto col = ps.column(p);
    auto q = quintile_transform(col, cfg);
    for (int e = 0; e < kEntityCount; ++e) m.q[e][p - 1] = q[e];
  }
  return m;
}

Derived2010 derive_2010_component(double component_2020, double difference) {
  double v = component_2020 - difference;
  return {v, v < -0.005};
}

AdjustedWeights zero_negative_weights(const PsRow& raw_weights, const PsRow& ps_values) {
  AdjustedWeights out{raw_weights, {}};
  for (const PsDef& def : catalog()) {
    if (def.is_difference() && ps_values[def.id - 1] < 0) {
      out.weights[def.id - 1] = 0.0;
      out.zeroed.push_back(def.id);
    }
  }
  return out;
}

PsRow scale_weights(const PsRow& weights) {
  double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (sum <= 0.0) throw DomainError("degenerate weight row: sum is not positive");
  PsRow scaled{};
  for (int i = 0; i < kPsCount; ++i) scaled[i] = weights[i] / sum;
  return scaled;
}

double ps1_from_maf_counts(double deletes, double adds, double common) {
  if (deletes < 0 || adds < 0 || common < 0)
    throw DomainError("address counts must be nonnegative");
  double total = deletes + adds + common;
  if (total <= 0) throw DomainError("address counts are all zero");
  return 100.0 * (deletes + adds) / total;
}

}  // namespace riskdex
