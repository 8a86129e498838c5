#include "riskdex/analysis.hpp"

#include "riskdex/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace riskdex {

PsSummary summary_stats(std::span<const double> column, int ps_id, bool exclude_us) {
  if (column.size() != kEntityCount)
    throw DomainError("summary_stats expects a 52-entity column");
  PsSummary s;
  s.ps_id = ps_id;
  s.min = std::numeric_limits<double>::infinity();
  s.max = -std::numeric_limits<double>::infinity();
  double sum = 0;
  int n = 0;
  for (int e = exclude_us ? 1 : 0; e < kEntityCount; ++e) {
    sum += column[e];
    s.min = std::min(s.min, column[e]);
    s.max = std::max(s.max, column[e]);
    ++n;
  }
  s.mean = sum / n;
  s.range = s.max - s.min;
  double mean2 = std::round(s.mean * 100.0) / 100.0;  // source tables carry 2 decimals
  if (s.range == 0.0)
    s.relative_range = 0.0;
  else
    s.relative_range = s.range / (mean2 != 0.0 ? mean2 : s.mean);
  return s;
}

std::vector<std::pair<int, double>> top_quintile(const PsMatrix& ps, int ps_id, int k) {
  ps_def(ps_id);
  if (k < 0 || k > kStateCount)
    throw DomainError("top_quintile: k must be within 0..51");
  // prefix of the reversed ascending ranking, same tie-break
  RankedColumn ranked = rank_entities(ps.column(ps_id), /*include_us=*/false,
                                      TieBreak::ByCanonicalOrder, ps_id);
  std::vector<std::pair<int, double>> out;
  for (int i = 0; i < k; ++i) {
    int entity = ranked.entries[ranked.entries.size() - 1 - i].entity;
    out.push_back({entity, ps.rel_diff[entity]});
  }
  return out;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("pearson: length mismatch");
  size_t n = x.size();
  if (n < 2) throw DomainError("pearson: need at least two observations");
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw DomainError("pearson: undefined for zero-variance input");
  return sxy / std::sqrt(sxx * syy);
}

namespace {

std::vector<double> mean_ranks(std::span<const double> v) {
  size_t n = v.size();
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    double r = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("spearman: length mismatch");
  auto rx = mean_ranks(x);
  auto ry = mean_ranks(y);
  return pearson(rx, ry);
}

std::array<WeightStats, kPsCount> weight_profile(const SpsResult& result) {
  std::array<WeightStats, kPsCount> out{};
  for (int p = 0; p < kPsCount; ++p) {
    out[p].min = std::numeric_limits<double>::infinity();
    out[p].max = -std::numeric_limits<double>::infinity();
  }
  int n = 0;
  for (int e = 1; e < kEntityCount; ++e) {
    if (!result.computed[e]) continue;
    ++n;
    for (int p = 0; p < kPsCount; ++p) {
      double w = result.scaled_weights[e][p];
      out[p].mean += w;
      out[p].min = std::min(out[p].min, w);
      out[p].max = std::max(out[p].max, w);
    }
  }
  if (n == 0) throw DomainError("weight_profile: no computed entities");
  for (int p = 0; p < kPsCount; ++p) out[p].mean /= n;
  return out;
}

}  // namespace riskdex
