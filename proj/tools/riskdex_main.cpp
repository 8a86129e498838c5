// riskdex: reproduction toolkit for state-level census process statistics.
//
// Subcommands map one-to-one onto the published artifacts: validate the
// fixture tables, compute the summary statistic, and reproduce the profile,
// summary, top-list, correlation and reconciliation tables and charts.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "riskdex/aggregate.hpp"
#include "riskdex/analysis.hpp"
#include "riskdex/ingest.hpp"
#include "riskdex/report.hpp"
#include "riskdex/transform.hpp"

namespace {

using namespace riskdex;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;  // validation or domain failure
constexpr int kExitIo = 2;      // I/O or parse failure

struct Options {
  std::string data_dir;
  std::string out_dir = "out";
  std::string format = "md";
  std::string ps = "all";
  int k = 11;
  bool force = false;
  bool rank_us = false;
  std::string x_col = "published_sps";
  std::string y_col = "rel_diff";
  std::string method = "pearson";
  // variant flags
  bool include_us = true;
  bool zeroing = true;
  std::string tie_break = "canonical";
  std::string us_sps = "skip";
  std::string n51_scheme = "11,10,10,10,10";
};

VariantConfig make_variant(const Options& opt) {
  VariantConfig cfg;
  cfg.include_us_in_quintiles = opt.include_us;
  cfg.zero_negative_weights = opt.zeroing;
  if (opt.tie_break == "canonical")
    cfg.tie_break = TieBreak::ByCanonicalOrder;
  else if (opt.tie_break == "reverse")
    cfg.tie_break = TieBreak::ByReverseCanonical;
  else
    throw DomainError("unknown tie-break \"" + opt.tie_break + "\"");
  if (opt.us_sps == "skip")
    cfg.us_sps = UsSpsMode::Skip;
  else if (opt.us_sps == "derive")
    cfg.us_sps = UsSpsMode::DeriveWhereAvailable;
  else
    throw DomainError("unknown us-sps mode \"" + opt.us_sps + "\"");

  std::string item;
  std::array<int, 5> scheme{};
  size_t idx = 0, start = 0;
  while (start <= opt.n51_scheme.size() && idx < 6) {
    size_t comma = opt.n51_scheme.find(',', start);
    item = opt.n51_scheme.substr(start, comma == std::string::npos ? std::string::npos
                                                                   : comma - start);
    if (idx >= 5) throw DomainError("n51 scheme needs exactly 5 buckets");
    try {
      scheme[idx++] = std::stoi(item);
    } catch (const std::exception&) {
      throw DomainError("bad n51 scheme bucket \"" + item + "\"");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (idx != 5) throw DomainError("n51 scheme needs exactly 5 buckets");
  cfg.quintile_n51_scheme = scheme;
  cfg.check_valid();
  return cfg;
}

std::vector<int> ps_selection(const std::string& ps) {
  if (ps == "all") {
    std::vector<int> all;
    for (int p = 1; p <= kPsCount; ++p) all.push_back(p);
    return all;
  }
  int id = 0;
  try {
    id = std::stoi(ps);
  } catch (const std::exception&) {
    throw DomainError("bad --ps value \"" + ps + "\"");
  }
  ps_def(id);
  return {id};
}

std::string data_dir_or_default(const Options& opt) {
  if (!opt.data_dir.empty()) return opt.data_dir;
  if (const char* env = std::getenv("RISKDEX_DATA_DIR")) return env;
  return "data";
}

DataBundle load_checked(const Options& opt, bool force_ok) {
  DataBundle bundle = load_bundle(data_dir_or_default(opt));
  if (!force_ok) {
    ValidationReport rep = validate(bundle);
    if (!rep.ok())
      throw DomainError("fixtures fail validation (" +
                        std::to_string(rep.undocumented_failures()) +
                        " unexplained failures); rerun `validate` or use --force");
  }
  return bundle;
}

void write_out(const Options& opt, const std::string& name, const std::string& content) {
  std::filesystem::create_directories(opt.out_dir);
  write_file_atomic(std::filesystem::path(opt.out_dir) / name, content);
}

int cmd_validate(const Options& opt) {
  DataBundle bundle = load_bundle(data_dir_or_default(opt));
  ValidationReport rep = validate(bundle);
  std::cout << render_validation(rep, parse_format(opt.format));
  return rep.ok() ? kExitOk : kExitDomain;
}

std::string sps_csv(const SpsResult& res, bool forced) {
  std::string out;
  if (forced) out += "# warning: validation bypassed (--force)\n";
  out += "state,sps,zeroed,maf_pct,sr_pct,nrfu_pct,dp_pct,gq_pct\n";
  for (int e = 0; e < kEntityCount; ++e) {
    if (!res.computed[e]) continue;
    out += std::string(entity_code(e)) + "," + fmt_fixed(res.sps[e], 4) + ",";
    for (size_t i = 0; i < res.zeroed[e].size(); ++i)
      out += (i ? ";" : "") + std::to_string(res.zeroed[e][i]);
    for (double pct : res.phase_pct[e]) out += "," + fmt_fixed(pct, 1);
    out += "\n";
  }
  return out;
}

std::string sps_json(const SpsResult& res, bool forced) {
  nlohmann::ordered_json j;
  j["variant"] = res.config.name();
  if (forced) j["warning"] = "validation bypassed (--force)";
  j["entities"] = nlohmann::ordered_json::array();
  for (int e = 0; e < kEntityCount; ++e) {
    if (!res.computed[e]) continue;
    nlohmann::ordered_json ej;
    ej["state"] = std::string(entity_code(e));
    ej["sps"] = res.sps[e];
    ej["zeroed"] = res.zeroed[e];
    const char* keys[kPhaseCount] = {"maf_pct", "sr_pct", "nrfu_pct", "dp_pct", "gq_pct"};
    for (int ph = 0; ph < kPhaseCount; ++ph) ej[keys[ph]] = res.phase_pct[e][ph];
    j["entities"].push_back(std::move(ej));
  }
  return j.dump(2) + "\n";
}

int cmd_compute(const Options& opt) {
  DataBundle bundle = load_checked(opt, opt.force);
  SpsResult res = run_variant(bundle, make_variant(opt));
  write_out(opt, "sps.csv", sps_csv(res, opt.force));
  write_out(opt, "sps.json", sps_json(res, opt.force));
  std::cout << "wrote " << opt.out_dir << "/sps.csv and sps.json\n";
  return kExitOk;
}

int cmd_profile(const Options& opt) {
  DataBundle bundle = load_checked(opt, opt.force);
  SpsResult res = run_variant(bundle, make_variant(opt));
  Format format = parse_format(opt.format);
  for (int ps : ps_selection(opt.ps)) {
    ProfileDoc doc = build_profile(bundle, res, ps, opt.rank_us);
    std::cout << render_profile(doc, format);
    if (opt.ps == "all" && format == Format::Markdown) std::cout << "\n";
  }
  return kExitOk;
}

int cmd_stats(const Options& opt) {
  DataBundle bundle = load_checked(opt, opt.force);
  std::vector<PsSummary> stats;
  for (int ps : ps_selection(opt.ps))
    stats.push_back(summary_stats(bundle.ps.column(ps), ps));
  std::optional<PsSummary> sps_row;
  if (opt.ps == "all") {
    std::array<double, kEntityCount> col = bundle.published.sps;
    sps_row = summary_stats(col, 0);
  }
  std::cout << render_stats_plain(stats, sps_row);
  return kExitOk;
}

int cmd_top(const Options& opt) {
  DataBundle bundle = load_checked(opt, opt.force);
  if (opt.ps == "all") throw DomainError("top needs a single --ps");
  int ps = ps_selection(opt.ps)[0];
  if (opt.k < 1 || opt.k > kStateCount)
    throw DomainError("--k must be within 1..51");
  auto rows = top_quintile(bundle.ps, ps, opt.k);
  int rank = 0;
  for (const auto& [entity, rd] : rows)
    std::cout << ++rank << " " << entity_code(entity) << " " << fmt_fixed(rd, 2) << "\n";
  return kExitOk;
}

std::vector<double> named_column(const DataBundle& bundle, const std::string& name,
                                 const SpsResult* computed) {
  std::vector<double> col;
  if (name == "published_sps") {
    for (int e = 1; e < kEntityCount; ++e) col.push_back(bundle.published.sps[e]);
  } else if (name == "rel_diff") {
    for (int e = 1; e < kEntityCount; ++e) col.push_back(bundle.ps.rel_diff[e]);
  } else if (name == "computed_sps") {
    for (int e = 1; e < kEntityCount; ++e) col.push_back(computed->sps[e]);
  } else if (name.rfind("ps", 0) == 0) {
    int ps = 0;
    try {
      ps = std::stoi(name.substr(2));
    } catch (const std::exception&) {
      throw DomainError("unknown column \"" + name + "\"");
    }
    ps_def(ps);
    for (int e = 1; e < kEntityCount; ++e) col.push_back(bundle.ps.value(e, ps));
  } else {
    throw DomainError("unknown column \"" + name + "\"");
  }
  return col;
}

int cmd_correlate(const Options& opt) {
  DataBundle bundle = load_checked(opt, opt.force);
  SpsResult res = run_variant(bundle, make_variant(opt));
  auto x = named_column(bundle, opt.x_col, &res);
  auto y = named_column(bundle, opt.y_col, &res);
  double r = 0;
  if (opt.method == "pearson")
    r = pearson(x, y);
  else if (opt.method == "spearman")
    r = spearman(x, y);
  else
    throw DomainError("unknown method \"" + opt.method + "\"");
  std::cout << opt.method << "(" << opt.x_col << ", " << opt.y_col << ") over 51 entities = "
            << fmt_fixed(r, 4) << "\n";
  return kExitOk;
}

int cmd_reconcile(const Options& opt) {
  DataBundle bundle = load_checked(opt, opt.force);
  auto grid = default_variant_grid();
  ReconciliationReport rep = reconcile(bundle, grid);
  std::cout << render_reconciliation(rep, bundle, parse_format(opt.format));
  return kExitOk;
}

int cmd_report(const Options& opt) {
  DataBundle bundle = load_checked(opt, opt.force);
  VariantConfig cfg = make_variant(opt);
  SpsResult res = run_variant(bundle, cfg);

  write_out(opt, "sps.csv", sps_csv(res, opt.force));
  write_out(opt, "sps.json", sps_json(res, opt.force));

  for (int ps = 1; ps <= kPsCount; ++ps) {
    ProfileDoc doc = build_profile(bundle, res, ps, opt.rank_us);
    std::string base = "profile_ps" + std::to_string(ps);
    write_out(opt, base + ".md", render_profile(doc, Format::Markdown));
    write_out(opt, base + ".json", render_profile(doc, Format::Json));
    write_out(opt, base + ".csv", render_profile(doc, Format::Csv));
    write_out(opt, "bars_ps" + std::to_string(ps) + ".svg", render_bar_svg(doc));

    std::array<int, kEntityCount> shades{};
    for (int e = 0; e < kEntityCount; ++e) shades[e] = res.quintiles.quintile(e, ps);
    write_out(opt, "cartogram_ps" + std::to_string(ps) + ".svg",
              render_grid_cartogram_svg(shades, "PS" + std::to_string(ps) + ": " +
                                                    bundle.strings.ps[ps - 1].title));
  }

  // SPS cartogram, shaded by quintiles of the computed column
  {
    std::array<double, kEntityCount> col{};
    for (int e = 0; e < kEntityCount; ++e) col[e] = res.computed[e] ? res.sps[e] : 0.0;
    VariantConfig sps_cfg = cfg;
    sps_cfg.include_us_in_quintiles = false;
    auto q = quintile_transform(col, sps_cfg);
    std::array<int, kEntityCount> shades{};
    for (int e = 0; e < kEntityCount; ++e) shades[e] = q[e];
    write_out(opt, "cartogram_sps.svg",
              render_grid_cartogram_svg(shades, bundle.strings.sps.title));
  }

  // phase decomposition grid
  {
    std::string out = "state,sps,maf_pct,sr_pct,nrfu_pct,dp_pct,gq_pct\n";
    for (int e = 0; e < kEntityCount; ++e) {
      if (!res.computed[e]) continue;
      out += std::string(entity_code(e)) + "," + fmt_fixed(res.sps[e], 2);
      for (double pct : res.phase_pct[e]) out += "," + fmt_fixed(pct, 1);
      out += "\n";
    }
    write_out(opt, "decomposition.csv", out);
  }

  // waffle charts for both collection-method share columns
  {
    std::vector<WaffleCategory> c2020, c2010;
    for (const Table2Row& row : bundle.published.table2) {
      c2020.push_back({row.method, row.pct_2020});
      c2010.push_back({row.method, row.pct_2010});
    }
    write_out(opt, "waffle_2020.svg", render_waffle_svg(c2020));
    write_out(opt, "waffle_2010.svg", render_waffle_svg(c2010));
  }

  ReconciliationReport rec = reconcile(bundle, default_variant_grid());
  write_out(opt, "reconciliation.md", render_reconciliation(rec, bundle, Format::Markdown));
  write_out(opt, "reconciliation.json", render_reconciliation(rec, bundle, Format::Json));

  ValidationReport val = validate(bundle);
  write_out(opt, "validation.md", render_validation(val, Format::Markdown));

  std::cout << "wrote report artifacts to " << opt.out_dir << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"riskdex: census process-statistics analytics"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--data-dir", opt.data_dir,
                 "fixture directory (default ./data or $RISKDEX_DATA_DIR)");
  app.add_option("--out-dir", opt.out_dir, "output directory (default ./out)");

  auto add_variant_flags = [&](CLI::App* cmd) {
    cmd->add_flag("--include-us,!--no-include-us", opt.include_us,
                  "include US among the quintile-ranked entities");
    cmd->add_flag("--zeroing,!--no-zeroing", opt.zeroing,
                  "zero weights of negative difference statistics");
    cmd->add_option("--tie-break", opt.tie_break, "canonical|reverse");
    cmd->add_option("--us-sps", opt.us_sps, "skip|derive");
    cmd->add_option("--n51-scheme", opt.n51_scheme, "bucket sizes for 51 entities");
    cmd->add_flag("--force", opt.force, "skip validation, stamp outputs with a warning");
  };

  CLI::App* validate_cmd = app.add_subcommand("validate", "cross-table consistency checks");
  validate_cmd->add_option("--format", opt.format, "md|json|csv");

  CLI::App* compute = app.add_subcommand("compute", "write sps.csv and sps.json");
  add_variant_flags(compute);

  CLI::App* profile = app.add_subcommand("profile", "ranked profile for one statistic");
  profile->add_option("--ps", opt.ps, "1..10 or all");
  profile->add_option("--format", opt.format, "md|json|csv|svg");
  profile->add_flag("--rank-us", opt.rank_us, "give US a rank (52-row layout)");
  add_variant_flags(profile);

  CLI::App* stats = app.add_subcommand("stats", "per-statistic mean/min/max/range");
  stats->add_option("--ps", opt.ps, "1..10 or all");
  add_variant_flags(stats);

  CLI::App* top = app.add_subcommand("top", "top-k entities by one statistic");
  top->add_option("--ps", opt.ps, "1..10");
  top->add_option("--k", opt.k, "list length (default 11)");
  add_variant_flags(top);

  CLI::App* correlate = app.add_subcommand("correlate", "correlation between two columns");
  correlate->add_option("--x", opt.x_col, "published_sps|computed_sps|rel_diff|psN");
  correlate->add_option("--y", opt.y_col, "published_sps|computed_sps|rel_diff|psN");
  correlate->add_option("--method", opt.method, "pearson|spearman");
  add_variant_flags(correlate);

  CLI::App* reconcile_cmd =
      app.add_subcommand("reconcile", "variant grid against the published column");
  reconcile_cmd->add_option("--format", opt.format, "md|json|csv");
  add_variant_flags(reconcile_cmd);

  CLI::App* report = app.add_subcommand("report", "write the full artifact set");
  report->add_flag("--rank-us", opt.rank_us, "give US a rank in profiles");
  add_variant_flags(report);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate_cmd->parsed()) return cmd_validate(opt);
    if (compute->parsed()) return cmd_compute(opt);
    if (profile->parsed()) return cmd_profile(opt);
    if (stats->parsed()) return cmd_stats(opt);
    if (top->parsed()) return cmd_top(opt);
    if (correlate->parsed()) return cmd_correlate(opt);
    if (reconcile_cmd->parsed()) return cmd_reconcile(opt);
    if (report->parsed()) return cmd_report(opt);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n"
              << "run 'riskdex --help' for usage\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
