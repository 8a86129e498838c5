#include "riskdex/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "riskdex/analysis.hpp"
#include "riskdex/transform.hpp"

namespace riskdex {

double compute_sps(std::span<const int> quintiles, std::span<const double> scaled_weights) {
  if (quintiles.size() != scaled_weights.size())
    throw DomainError("misaligned quintile and weight rows");
  double sps = 0;
  for (size_t i = 0; i < quintiles.size(); ++i) sps += scaled_weights[i] * quintiles[i];
  return sps;
}

std::array<double, kPhaseCount> decompose(std::span<const int> quintiles,
                                          std::span<const double> scaled_weights) {
  if (quintiles.size() != kPsCount || scaled_weights.size() != kPsCount)
    throw DomainError("decompose expects full 10-statistic rows");
  double sps = compute_sps(quintiles, scaled_weights);
  std::array<double, kPhaseCount> phase_mass{};
  for (const PsDef& def : catalog())
    phase_mass[static_cast<int>(def.phase)] +=
        scaled_weights[def.id - 1] * quintiles[def.id - 1];
  std::array<double, kPhaseCount> pct{};
  for (int ph = 0; ph < kPhaseCount; ++ph) pct[ph] = 100.0 * phase_mass[ph] / sps;
  return pct;
}

namespace {

// US weights are not published; they can be rebuilt only for statistics
// whose weight is the value itself or the 2020 component.
bool derive_us_weights(const DataBundle& bundle, PsRow& out) {
  out = PsRow{};
  bool any = false;
  for (const PsDef& def : catalog()) {
    switch (def.weight_source) {
      case WeightSource::SelfValue:
        out[def.id - 1] = bundle.ps.value(kUsIndex, def.id);
        any = true;
        break;
      case WeightSource::Component2020:
        out[def.id - 1] = bundle.components.value(kUsIndex, def.id);
        any = true;
        break;
      case WeightSource::RebasedIndependent:
        break;  // no reproducible basis
    }
  }
  return any;
}

void compute_entity(SpsResult& res, int e, const PsRow& raw_weights, const PsRow& values,
                    const VariantConfig& cfg) {
  PsRow adjusted = raw_weights;
  if (cfg.zero_negative_weights) {
    AdjustedWeights z = zero_negative_weights(raw_weights, values);
    adjusted = z.weights;
    res.zeroed[e] = std::move(z.zeroed);
  }
  PsRow scaled{};
  try {
    scaled = scale_weights(adjusted);
  } catch (const DomainError&) {
    throw DomainError("degenerate all-zero weight row for entity " +
                      std::string(entity_code(e)));
  }
  std::array<int, kPsCount> q{};
  for (int p = 1; p <= kPsCount; ++p) q[p - 1] = res.quintiles.quintile(e, p);
  res.scaled_weights[e] = scaled;
  res.sps[e] = compute_sps(q, scaled);
  res.phase_pct[e] = decompose(q, scaled);
  res.computed[e] = true;
}

}  // namespace

SpsResult run_variant(const DataBundle& bundle, const VariantConfig& cfg) {
  cfg.check_valid();
  SpsResult res;
  res.config = cfg;
  res.quintiles = quintile_matrix(bundle.ps, cfg);

  for (int e = 1; e < kEntityCount; ++e)
    compute_entity(res, e, bundle.weights.raw[e], bundle.ps.values[e], cfg);

  if (cfg.us_sps == UsSpsMode::DeriveWhereAvailable && cfg.include_us_in_quintiles) {
    PsRow us_weights{};
    if (derive_us_weights(bundle, us_weights))
      compute_entity(res, kUsIndex, us_weights, bundle.ps.values[kUsIndex], cfg);
  }
  return res;
}

ReconciliationReport reconcile(const DataBundle& bundle,
                               std::span<const VariantConfig> configs) {
  if (configs.empty()) throw DomainError("reconcile needs at least one variant");
  ReconciliationReport rep;
  for (const VariantConfig& cfg : configs) {
    SpsResult res = run_variant(bundle, cfg);
    VariantOutcome out;
    out.config = cfg;
    out.name = cfg.name();
    out.computed = res.computed;
    out.sps = res.sps;

    std::vector<double> computed, published;
    std::vector<std::pair<double, int>> devs;
    for (int e = 1; e < kEntityCount; ++e) {
      double d = res.sps[e] - bundle.published.sps[e];
      computed.push_back(res.sps[e]);
      published.push_back(bundle.published.sps[e]);
      devs.push_back({std::abs(d), e});
      out.max_abs_dev = std::max(out.max_abs_dev, std::abs(d));
      out.mean_abs_dev += std::abs(d);
    }
    out.mean_abs_dev /= kStateCount;
    out.spearman_rho = spearman(computed, published);
    std::sort(devs.begin(), devs.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    for (int i = 0; i < 3 && i < static_cast<int>(devs.size()); ++i)
      out.worst.push_back(devs[i].second);
    rep.variants.push_back(std::move(out));
  }
  rep.best_index = 0;
  for (size_t i = 1; i < rep.variants.size(); ++i)
    if (rep.variants[i].max_abs_dev < rep.variants[rep.best_index].max_abs_dev)
      rep.best_index = static_cast<int>(i);
  return rep;
}

std::vector<VariantConfig> default_variant_grid() {
  std::vector<VariantConfig> grid;
  for (bool us_in : {true, false})
    for (bool zeroing : {true, false}) {
      VariantConfig cfg;
      cfg.include_us_in_quintiles = us_in;
      cfg.zero_negative_weights = zeroing;
      grid.push_back(cfg);
    }
  return grid;
}

}  // namespace riskdex
