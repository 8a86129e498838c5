#include "riskdex/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "riskdex/transform.hpp"

namespace riskdex {

using nlohmann::ordered_json;

std::string fmt_fixed(double v, int decimals) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  std::string s = buf;
  // tiny negatives round to "-0.00"; print them unsigned
  if (s.size() > 1 && s[0] == '-' && s.find_first_not_of("0.", 1) == std::string::npos)
    s.erase(0, 1);
  return s;
}

// Statistics derive from 2-decimal source cells, so display rounds to the
// source precision first and then half-away-from-zero to 1 decimal. A plain
// "%.1f" would turn the stored 20.15 (binary 20.1499...) into 20.1.
std::string fmt_table1(double v) {
  double at2 = std::round(v * 100.0) / 100.0;
  double at1 = std::round(at2 * 10.0) / 10.0;
  return fmt_fixed(at1, 1);
}

Format parse_format(std::string_view name) {
  if (name == "md") return Format::Markdown;
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "svg") return Format::Svg;
  throw DomainError("unknown format \"" + std::string(name) + "\"");
}

ProfileDoc build_profile(const DataBundle& bundle, const SpsResult& result, int ps_id,
                         bool rank_us) {
  const PsDef& def = ps_def(ps_id);
  ProfileDoc doc;
  doc.ps_id = ps_id;
  const ProfileText& text = bundle.strings.ps[ps_id - 1];
  doc.title = text.title;
  doc.calc_note = text.calc_note;
  doc.interpretation = text.interpretation;
  doc.us_ranked = rank_us;

  auto column = bundle.ps.column(ps_id);
  RankedColumn ranked =
      rank_entities(column, rank_us, result.config.tie_break, ps_id);

  // Bars span the ranked set: 0 at its minimum, 1 at its maximum.
  double lo = ranked.entries.front().value;
  double hi = ranked.entries.back().value;
  double span = hi - lo;

  for (const RankedEntry& entry : ranked.entries) {
    ProfileRow row;
    row.rank = entry.rank;
    row.entity = entry.entity;
    row.value = entry.value;
    if (def.is_difference())
      row.component_2020 = bundle.components.value(entry.entity, ps_id);
    row.bar = span > 0 ? (entry.value - lo) / span : 0.0;
    row.quintile = result.quintiles.quintile(entry.entity, ps_id);
    doc.rows.push_back(row);
  }

  doc.us_value = column[kUsIndex];
  if (def.is_difference()) doc.us_component = bundle.components.value(kUsIndex, ps_id);
  doc.us_quintile = result.quintiles.quintile(kUsIndex, ps_id);
  doc.us_position = 0;
  for (const ProfileRow& row : doc.rows)
    if (row.value < doc.us_value) ++doc.us_position;
  return doc;
}

namespace {

std::string profile_md(const ProfileDoc& doc) {
  std::string out;
  out += "# PS" + std::to_string(doc.ps_id) + ": " + doc.title + "\n\n";
  out += "**How it is calculated.** " + doc.calc_note + "\n\n";
  out += "**How it is interpreted.** " + doc.interpretation + "\n\n";
  bool with_component = !doc.rows.empty() && doc.rows.front().component_2020.has_value();
  out += with_component ? "| Rank | State | 2020 component | Value | Bar | Quintile |\n"
                          "|---:|---|---:|---:|---:|---:|\n"
                        : "| Rank | State | Value | Bar | Quintile |\n"
                          "|---:|---|---:|---:|---:|\n";
  auto emit_us_inline = [&]() {
    out += "|  | United States |";
    if (doc.us_component) out += " " + fmt_fixed(*doc.us_component, 2) + " |";
    out += " " + fmt_fixed(doc.us_value, 2) + " |  | " +
           std::to_string(doc.us_quintile) + " |\n";
  };
  int i = 0;
  for (const ProfileRow& row : doc.rows) {
    if (!doc.us_ranked && i == doc.us_position) emit_us_inline();
    ++i;
    out += "| " + std::to_string(row.rank) + " | " +
           std::string(entity_name(row.entity)) + " |";
    if (row.component_2020) out += " " + fmt_fixed(*row.component_2020, 2) + " |";
    out += " " + fmt_fixed(row.value, 2) + " | " + fmt_fixed(row.bar, 3) + " | " +
           std::to_string(row.quintile) + " |\n";
  }
  if (!doc.us_ranked && doc.us_position == static_cast<int>(doc.rows.size()))
    emit_us_inline();
  return out;
}

std::string profile_json(const ProfileDoc& doc) {
  ordered_json j;
  j["ps_id"] = doc.ps_id;
  j["rows"] = ordered_json::array();
  for (const ProfileRow& row : doc.rows) {
    ordered_json r;
    r["rank"] = row.rank;
    r["state"] = std::string(entity_code(row.entity));
    r["value"] = row.value;
    if (row.component_2020) r["component_2020"] = *row.component_2020;
    r["bar"] = row.bar;
    r["quintile"] = row.quintile;
    j["rows"].push_back(std::move(r));
  }
  j["us"] = ordered_json{{"value", doc.us_value}};
  return j.dump(2) + "\n";
}

std::string profile_csv(const ProfileDoc& doc) {
  bool with_component = !doc.rows.empty() && doc.rows.front().component_2020.has_value();
  std::string out = with_component ? "rank,state,value,component_2020,bar,quintile\n"
                                   : "rank,state,value,bar,quintile\n";
  for (const ProfileRow& row : doc.rows) {
    out += std::to_string(row.rank) + "," + std::string(entity_code(row.entity)) + "," +
           fmt_fixed(row.value, 2);
    if (with_component) out += "," + fmt_fixed(*row.component_2020, 2);
    out += "," + fmt_fixed(row.bar, 3) + "," + std::to_string(row.quintile) + "\n";
  }
  return out;
}

constexpr const char* kSvgShadeStyle =
    "<style>"
    ".q1{fill:#eef2f7;}.q2{fill:#c4d2e3;}.q3{fill:#8fa8c8;}"
    ".q4{fill:#5878a8;}.q5{fill:#2c4870;}"
    "text{font-family:monospace;font-size:10px;fill:#111;}"
    ".t{font-size:13px;}</style>";

struct GridTile {
  const char* code;
  int col;
  int row;
};

// Fixed approximate-US tile layout (11 columns, 8 rows).
constexpr GridTile kGrid[] = {
    {"AK", 0, 0}, {"ME", 10, 0},
    {"VT", 9, 1}, {"NH", 10, 1},
    {"WA", 0, 2}, {"ID", 1, 2}, {"MT", 2, 2}, {"ND", 3, 2}, {"MN", 4, 2},
    {"IL", 5, 2}, {"WI", 6, 2}, {"MI", 7, 2}, {"NY", 8, 2}, {"RI", 9, 2},
    {"MA", 10, 2},
    {"OR", 0, 3}, {"NV", 1, 3}, {"WY", 2, 3}, {"SD", 3, 3}, {"IA", 4, 3},
    {"IN", 5, 3}, {"OH", 6, 3}, {"PA", 7, 3}, {"NJ", 8, 3}, {"CT", 9, 3},
    {"CA", 0, 4}, {"UT", 1, 4}, {"CO", 2, 4}, {"NE", 3, 4}, {"MO", 4, 4},
    {"KY", 5, 4}, {"WV", 6, 4}, {"VA", 7, 4}, {"MD", 8, 4}, {"DE", 9, 4},
    {"AZ", 1, 5}, {"NM", 2, 5}, {"KS", 3, 5}, {"AR", 4, 5}, {"TN", 5, 5},
    {"NC", 6, 5}, {"SC", 7, 5}, {"DC", 8, 5},
    {"OK", 3, 6}, {"LA", 4, 6}, {"MS", 5, 6}, {"AL", 6, 6}, {"GA", 7, 6},
    {"HI", 0, 7}, {"TX", 3, 7}, {"FL", 8, 7},
};
static_assert(std::size(kGrid) == kStateCount);

}  // namespace

std::string render_profile(const ProfileDoc& doc, Format format) {
  switch (format) {
    case Format::Markdown: return profile_md(doc);
    case Format::Json: return profile_json(doc);
    case Format::Csv: return profile_csv(doc);
    case Format::Svg: return render_bar_svg(doc);
  }
  throw DomainError("unsupported profile format");
}

std::string render_bar_svg(const ProfileDoc& doc) {
  const int row_h = 12;
  const int top = 24;
  const int label_w = 36;
  const int value_w = 64;
  const int width = 640;
  const int bar_w = width - label_w - value_w;
  const int height = top + row_h * static_cast<int>(doc.rows.size()) + 8;

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
                    std::to_string(width) + " " + std::to_string(height) + "\">";
  svg += kSvgShadeStyle;
  svg += "<text class=\"t\" x=\"4\" y=\"15\">PS" + std::to_string(doc.ps_id) + ": " +
         doc.title + "</text>";
  int y = top;
  for (const ProfileRow& row : doc.rows) {
    svg += "<text x=\"4\" y=\"" + std::to_string(y + 9) + "\">" +
           std::string(entity_code(row.entity)) + "</text>";
    svg += "<rect class=\"q" + std::to_string(row.quintile) + "\" x=\"" +
           std::to_string(label_w) + "\" y=\"" + std::to_string(y) + "\" width=\"" +
           fmt_fixed(row.bar * bar_w, 2) + "\" height=\"9\"/>";
    svg += "<text x=\"" + std::to_string(width - value_w + 4) + "\" y=\"" +
           std::to_string(y + 9) + "\">" + fmt_fixed(row.value, 2) + "</text>";
    y += row_h;
  }
  svg += "</svg>\n";
  return svg;
}

std::string render_grid_cartogram_svg(const std::array<int, kEntityCount>& shades,
                                      const std::string& title) {
  for (const GridTile& tile : kGrid) {
    int e = canonical_index(tile.code);
    if (shades[e] < 1 || shades[e] > 5)
      throw DomainError("missing or invalid shade for entity " + std::string(tile.code));
  }
  const int cell = 50;
  const int gap = 4;
  const int top = 22;
  const int width = gap + 11 * (cell + gap);
  const int height = top + 8 * (cell + gap) + gap;

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
                    std::to_string(width) + " " + std::to_string(height) + "\">";
  svg += kSvgShadeStyle;
  svg += "<text class=\"t\" x=\"4\" y=\"15\">" + title + "</text>";
  for (const GridTile& tile : kGrid) {
    int e = canonical_index(tile.code);
    int x = gap + tile.col * (cell + gap);
    int y = top + tile.row * (cell + gap);
    svg += "<rect class=\"q" + std::to_string(shades[e]) + "\" x=\"" + std::to_string(x) +
           "\" y=\"" + std::to_string(y) + "\" width=\"" + std::to_string(cell) +
           "\" height=\"" + std::to_string(cell) + "\"/>";
    bool dark = shades[e] >= 4;
    svg += "<text x=\"" + std::to_string(x + 17) + "\" y=\"" + std::to_string(y + 29) +
           "\"" + (dark ? " style=\"fill:#fff\"" : "") + ">" + tile.code + "</text>";
  }
  svg += "</svg>\n";
  return svg;
}

std::vector<int> apportion_largest_remainder(std::span<const double> shares, int n_icons) {
  double sum = 0;
  for (double s : shares) {
    if (s < 0) throw DomainError("negative share");
    sum += s;
  }
  if (std::abs(sum - 100.0) > 0.1)
    throw DomainError("shares sum to " + fmt_fixed(sum, 2) + ", expected 100 within 0.1");

  size_t n = shares.size();
  std::vector<int> alloc(n);
  std::vector<std::pair<double, size_t>> remainders(n);
  int assigned = 0;
  for (size_t i = 0; i < n; ++i) {
    double exact = shares[i] * n_icons / 100.0;
    alloc[i] = static_cast<int>(std::floor(exact));
    assigned += alloc[i];
    remainders[i] = {exact - alloc[i], i};
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (int i = 0; i < n_icons - assigned; ++i) ++alloc[remainders[i].second];
  return alloc;
}

std::string render_waffle_svg(std::span<const WaffleCategory> categories, int n_icons) {
  std::vector<double> shares;
  for (const auto& c : categories) shares.push_back(c.share);
  std::vector<int> alloc = apportion_largest_remainder(shares, n_icons);

  const int cols = 25;
  const int cell = 14;
  const int gap = 2;
  const int top = 22;
  int rows = (n_icons + cols - 1) / cols;
  const int width = gap + cols * (cell + gap);
  const int height = top + rows * (cell + gap) + gap;

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
                    std::to_string(width) + " " + std::to_string(height) + "\">";
  svg += "<style>.c1{fill:#4d7ab0;}.c2{fill:#67a663;}.c3{fill:#c7a53f;}"
         ".c4{fill:#a45fa0;}.c5{fill:#c05b50;}"
         "text{font-family:monospace;font-size:11px;fill:#111;}</style>";
  std::string legend;
  for (size_t i = 0; i < categories.size(); ++i) {
    if (i) legend += ", ";
    legend += categories[i].label + " " + std::to_string(alloc[i]);
  }
  svg += "<text x=\"4\" y=\"15\">" + legend + "</text>";
  int idx = 0;
  for (size_t cat = 0; cat < categories.size(); ++cat) {
    for (int k = 0; k < alloc[cat]; ++k, ++idx) {
      int x = gap + (idx % cols) * (cell + gap);
      int y = top + (idx / cols) * (cell + gap);
      svg += "<rect class=\"c" + std::to_string(cat + 1) + "\" x=\"" + std::to_string(x) +
             "\" y=\"" + std::to_string(y) + "\" width=\"" + std::to_string(cell) +
             "\" height=\"" + std::to_string(cell) + "\"/>";
    }
  }
  svg += "</svg>\n";
  return svg;
}

namespace {

const Erratum* worked_example(const DataBundle& bundle) {
  for (const auto& e : bundle.errata.entries)
    if (e.check_id == "worked_example_sps") return &e;
  return nullptr;
}

std::string reconciliation_md(const ReconciliationReport& report, const DataBundle& bundle) {
  std::string out = "# Reconciliation against the published SPS column\n\n";
  out += "| Variant | max abs dev | mean abs dev | Spearman rho | Worst entities | Best |\n";
  out += "|---|---:|---:|---:|---|:---:|\n";
  for (size_t i = 0; i < report.variants.size(); ++i) {
    const VariantOutcome& v = report.variants[i];
    out += "| " + v.name + " | " + fmt_fixed(v.max_abs_dev, 4) + " | " +
           fmt_fixed(v.mean_abs_dev, 4) + " | " + fmt_fixed(v.spearman_rho, 4) + " | ";
    for (size_t k = 0; k < v.worst.size(); ++k)
      out += (k ? " " : "") + std::string(entity_code(v.worst[k]));
    out += static_cast<int>(i) == report.best_index ? " | * |\n" : " |  |\n";
  }
  const VariantOutcome& best = report.variants[report.best_index];
  out += "\nBest variant: **" + best.name + "**\n";
  if (const Erratum* we = worked_example(bundle)) {
    out += "\n> Known anomaly: the published summary lists " +
           std::string(entity_code(we->entity)) + " at " + fmt_fixed(we->expected, 2) +
           " while the methodology's worked example arrives at " +
           fmt_fixed(we->actual, 2) + "; exact reproduction is not a sound target.\n";
  }
  out += "\n## Per-entity deviations, best variant\n\n";
  out += "| State | Computed | Published | Delta |\n|---|---:|---:|---:|\n";
  for (int e = 1; e < kEntityCount; ++e) {
    if (!best.computed[e]) continue;
    double d = best.sps[e] - bundle.published.sps[e];
    out += "| " + std::string(entity_code(e)) + " | " + fmt_fixed(best.sps[e], 4) + " | " +
           fmt_fixed(bundle.published.sps[e], 2) + " | " + fmt_fixed(d, 4) + " |\n";
  }
  return out;
}

std::string reconciliation_json(const ReconciliationReport& report,
                                const DataBundle& bundle) {
  ordered_json j;
  j["variants"] = ordered_json::array();
  for (const VariantOutcome& v : report.variants) {
    ordered_json vj;
    vj["name"] = v.name;
    vj["max_abs_dev"] = v.max_abs_dev;
    vj["mean_abs_dev"] = v.mean_abs_dev;
    vj["spearman_rho"] = v.spearman_rho;
    vj["worst"] = ordered_json::array();
    for (int e : v.worst) vj["worst"].push_back(std::string(entity_code(e)));
    ordered_json sps = ordered_json::object();
    for (int e = 0; e < kEntityCount; ++e)
      if (v.computed[e]) sps[std::string(entity_code(e))] = v.sps[e];
    vj["sps"] = std::move(sps);
    j["variants"].push_back(std::move(vj));
  }
  j["best_variant"] = report.variants[report.best_index].name;
  if (const Erratum* we = worked_example(bundle)) {
    j["anomaly"] = ordered_json{{"state", std::string(entity_code(we->entity))},
                                {"published", we->expected},
                                {"worked_example", we->actual},
                                {"note", we->note}};
  }
  return j.dump(2) + "\n";
}

std::string reconciliation_csv(const ReconciliationReport& report) {
  std::string out = "variant,max_abs_dev,mean_abs_dev,spearman_rho,best\n";
  for (size_t i = 0; i < report.variants.size(); ++i) {
    const VariantOutcome& v = report.variants[i];
    out += v.name + "," + fmt_fixed(v.max_abs_dev, 4) + "," + fmt_fixed(v.mean_abs_dev, 4) +
           "," + fmt_fixed(v.spearman_rho, 4) + "," +
           (static_cast<int>(i) == report.best_index ? "1" : "0") + "\n";
  }
  return out;
}

std::string check_scope(const ValidationCheck& c) {
  std::string s;
  if (c.entity >= 0) s += std::string(entity_code(c.entity));
  if (c.ps_id > 0) s += (s.empty() ? "ps" : " ps") + std::to_string(c.ps_id);
  return s.empty() ? "-" : s;
}

std::string validation_md(const ValidationReport& report) {
  std::string out = "# Cross-table validation\n\n";
  out += "Checks run: " + std::to_string(report.total()) + "\n";
  out += "Failures: " + std::to_string(report.failures()) + " (" +
         std::to_string(report.failures() - report.undocumented_failures()) +
         " documented errata, " + std::to_string(report.undocumented_failures()) +
         " unexplained)\n\n";
  if (report.failures() > 0) {
    out += "| Check | Scope | Expected | Actual | Tolerance | Documented |\n";
    out += "|---|---|---:|---:|---:|:---:|\n";
    for (const auto& c : report.checks) {
      if (c.pass) continue;
      out += "| " + c.check_id + " | " + check_scope(c) + " | " + fmt_fixed(c.expected, 3) +
             " | " + fmt_fixed(c.actual, 3) + " | " + fmt_fixed(c.tolerance, 3) + " | " +
             (c.documented ? "yes" : "NO") + " |\n";
    }
  }
  out += report.ok() ? "\nRESULT: PASS\n" : "\nRESULT: FAIL\n";
  return out;
}

std::string validation_json(const ValidationReport& report) {
  ordered_json j;
  j["checks_run"] = report.total();
  j["failures"] = report.failures();
  j["undocumented_failures"] = report.undocumented_failures();
  j["pass"] = report.ok();
  j["failed_checks"] = ordered_json::array();
  for (const auto& c : report.checks) {
    if (c.pass) continue;
    ordered_json cj;
    cj["check_id"] = c.check_id;
    cj["ps_id"] = c.ps_id;
    cj["state"] = c.entity >= 0 ? std::string(entity_code(c.entity)) : "";
    cj["expected"] = c.expected;
    cj["actual"] = c.actual;
    cj["tolerance"] = c.tolerance;
    cj["documented"] = c.documented;
    j["failed_checks"].push_back(std::move(cj));
  }
  j["errata"] = ordered_json::array();
  for (const auto& e : report.errata) {
    j["errata"].push_back(ordered_json{{"check_id", e.check_id},
                                       {"ps_id", e.ps_id},
                                       {"state", e.entity >= 0 ? std::string(entity_code(e.entity)) : ""},
                                       {"expected", e.expected},
                                       {"actual", e.actual},
                                       {"note", e.note}});
  }
  return j.dump(2) + "\n";
}

std::string validation_csv(const ValidationReport& report) {
  std::string out = "check_id,ps_id,state,expected,actual,tolerance,pass,documented\n";
  for (const auto& c : report.checks) {
    if (c.pass) continue;
    out += c.check_id + "," + std::to_string(c.ps_id) + "," +
           (c.entity >= 0 ? std::string(entity_code(c.entity)) : "") + "," +
           fmt_fixed(c.expected, 3) + "," + fmt_fixed(c.actual, 3) + "," +
           fmt_fixed(c.tolerance, 3) + "," + (c.pass ? "1" : "0") + "," +
           (c.documented ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace

std::string render_reconciliation(const ReconciliationReport& report,
                                  const DataBundle& bundle, Format format) {
  switch (format) {
    case Format::Markdown: return reconciliation_md(report, bundle);
    case Format::Json: return reconciliation_json(report, bundle);
    case Format::Csv: return reconciliation_csv(report);
    default: throw DomainError("unsupported reconciliation format");
  }
}

std::string render_validation(const ValidationReport& report, Format format) {
  switch (format) {
    case Format::Markdown: return validation_md(report);
    case Format::Json: return validation_json(report);
    case Format::Csv: return validation_csv(report);
    default: throw DomainError("unsupported validation format");
  }
}

std::string render_stats(std::span<const PsSummary> stats,
                         const std::optional<PsSummary>& sps_row, Format format) {
  if (format == Format::Markdown) {
    std::string out = "| PS | Name | Mean | Min | Max | Range | Relative range |\n";
    out += "|---:|---|---:|---:|---:|---:|---:|\n";
    for (const PsSummary& s : stats) {
      out += "| " + std::to_string(s.ps_id) + " | " +
             std::string(ps_def(s.ps_id).short_name) + " | " + fmt_table1(s.mean) +
             " | " + fmt_table1(s.min) + " | " + fmt_table1(s.max) + " | " +
             fmt_table1(s.range) + " | " + fmt_table1(s.relative_range) + " |\n";
    }
    if (sps_row) {
      const PsSummary& s = *sps_row;
      out += "|  | SPS | " + fmt_table1(s.mean) + " | " + fmt_table1(s.min) + " | " +
             fmt_table1(s.max) + " | " + fmt_table1(s.range) + " | " +
             fmt_table1(s.relative_range) + " |\n";
    }
    return out;
  }
  if (format == Format::Csv) {
    std::string out = "ps,mean,min,max,range,relative_range\n";
    for (const PsSummary& s : stats) {
      out += std::to_string(s.ps_id) + "," + fmt_table1(s.mean) + "," +
             fmt_table1(s.min) + "," + fmt_table1(s.max) + "," + fmt_table1(s.range) +
             "," + fmt_table1(s.relative_range) + "\n";
    }
    if (sps_row) {
      const PsSummary& s = *sps_row;
      out += "sps," + fmt_table1(s.mean) + "," + fmt_table1(s.min) + "," +
             fmt_table1(s.max) + "," + fmt_table1(s.range) + "," +
             fmt_table1(s.relative_range) + "\n";
    }
    return out;
  }
  if (format == Format::Json) {
    ordered_json j = ordered_json::array();
    for (const PsSummary& s : stats) {
      j.push_back(ordered_json{{"ps", s.ps_id},
                               {"mean", s.mean},
                               {"min", s.min},
                               {"max", s.max},
                               {"range", s.range},
                               {"relative_range", s.relative_range}});
    }
    return j.dump(2) + "\n";
  }
  throw DomainError("unsupported stats format");
}

std::string render_stats_plain(std::span<const PsSummary> stats,
                               const std::optional<PsSummary>& sps_row) {
  auto row_values = [](const PsSummary& s) {
    return fmt_table1(s.mean) + " " + fmt_table1(s.min) + " " + fmt_table1(s.max) + " " +
           fmt_table1(s.range) + " " + fmt_table1(s.relative_range);
  };
  std::string out;
  for (const PsSummary& s : stats)
    out += "ps" + std::to_string(s.ps_id) + " " + row_values(s) + "\n";
  if (sps_row) out += "sps " + row_values(*sps_row) + "\n";
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ParseError("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw ParseError("cannot rename " + tmp.string() + " to " + path.string());
}

}  // namespace riskdex
