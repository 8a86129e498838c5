#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "riskdex/aggregate.hpp"
#include "riskdex/analysis.hpp"

namespace riskdex {

enum class Format { Markdown, Json, Csv, Svg };
Format parse_format(std::string_view name);  // "md" | "json" | "csv" | "svg"

struct ProfileRow {
  int rank = 0;
  int entity = 0;
  double value = 0;
  std::optional<double> component_2020;  // difference statistics only
  double bar = 0;                        // 0 at the minimum, 1 at the maximum
  int quintile = 0;                      // shade
};

struct ProfileDoc {
  int ps_id = 0;
  std::string title;
  std::string calc_note;
  std::string interpretation;
  std::vector<ProfileRow> rows;  // ascending by value, ranked entities only
  bool us_ranked = false;        // true when US is ranked inside rows
  double us_value = 0;
  std::optional<double> us_component;
  int us_quintile = 0;
  int us_position = 0;  // row index US sits before when printed inline
};

// The ranked table behind one statistic's profile page. The row order is
// rank_entities for the same tie-break; rank_us switches to the 52-row
// layout where US gets a rank like any state.
ProfileDoc build_profile(const DataBundle& bundle, const SpsResult& result, int ps_id,
                         bool rank_us = false);

std::string render_profile(const ProfileDoc& doc, Format format);
std::string render_bar_svg(const ProfileDoc& doc);

// Fixed tile-grid layout of the 51 non-US entities; shades are quintiles
// 1..5 (darker = higher). A shade outside 1..5 names the offending entity.
std::string render_grid_cartogram_svg(const std::array<int, kEntityCount>& shades,
                                      const std::string& title);

// Largest-remainder apportionment of n_icons cells; ties go to the earlier
// category. Shares must sum to 100 within 0.1.
std::vector<int> apportion_largest_remainder(std::span<const double> shares, int n_icons);

struct WaffleCategory {
  std::string label;
  double share = 0;
};

std::string render_waffle_svg(std::span<const WaffleCategory> categories,
                              int n_icons = 500);

std::string render_reconciliation(const ReconciliationReport& report,
                                  const DataBundle& bundle, Format format);

std::string render_validation(const ValidationReport& report, Format format);

std::string render_stats(std::span<const PsSummary> stats,
                         const std::optional<PsSummary>& sps_row, Format format);

// One plain line per statistic: "ps1 11.3 5.9 26.6 20.7 1.8".
std::string render_stats_plain(std::span<const PsSummary> stats,
                               const std::optional<PsSummary>& sps_row);

// Write-then-rename so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Shared fixed-precision formatter ("-0" never appears).
std::string fmt_fixed(double v, int decimals);

}  // namespace riskdex
