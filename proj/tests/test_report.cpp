#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "riskdex/report.hpp"
#include "riskdex/transform.hpp"
#include "test_util.hpp"

using namespace riskdex;
using testutil::bundle;

namespace {

const SpsResult& default_result() {
  static SpsResult res = run_variant(bundle(), VariantConfig{});
  return res;
}

int count_occurrences(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("profile rows: endpoints, bars, ranks") {
  ProfileDoc doc = build_profile(bundle(), default_result(), 1);
  REQUIRE(doc.rows.size() == 51);

  const ProfileRow& first = doc.rows.front();
  CHECK(first.rank == 1);
  CHECK(entity_name(first.entity) == "Maryland");
  CHECK(first.value == doctest::Approx(5.87));
  CHECK(first.bar == doctest::Approx(0.0));

  const ProfileRow& last = doc.rows.back();
  CHECK(last.rank == 51);
  CHECK(entity_name(last.entity) == "Alaska");
  CHECK(last.value == doctest::Approx(26.55));
  CHECK(last.bar == doctest::Approx(1.0));

  // interior bars interpolate linearly between the endpoints
  for (const ProfileRow& row : doc.rows) {
    CHECK(row.bar == doctest::Approx((row.value - 5.87) / (26.55 - 5.87)).epsilon(1e-12));
    CHECK(row.quintile == default_result().quintiles.quintile(row.entity, 1));
  }
  CHECK_FALSE(doc.rows.front().component_2020.has_value());  // ps1 is a level statistic

  CHECK_THROWS_AS(build_profile(bundle(), default_result(), 11), DomainError);
}

TEST_CASE("profile row order equals rank_entities") {
  for (int ps : {2, 5, 10}) {
    ProfileDoc doc = build_profile(bundle(), default_result(), ps);
    RankedColumn ranked = rank_entities(bundle().ps.column(ps), false);
    REQUIRE(doc.rows.size() == ranked.entries.size());
    for (size_t i = 0; i < ranked.entries.size(); ++i) {
      CHECK(doc.rows[i].entity == ranked.entries[i].entity);
      CHECK(doc.rows[i].rank == ranked.entries[i].rank);
    }
  }
}

TEST_CASE("difference profiles carry the 2020 component column") {
  ProfileDoc doc = build_profile(bundle(), default_result(), 3);
  for (const ProfileRow& row : doc.rows) {
    REQUIRE(row.component_2020.has_value());
    CHECK(*row.component_2020 ==
          doctest::Approx(bundle().components.value(row.entity, 3)));
  }
  REQUIRE(doc.us_component.has_value());
  CHECK(*doc.us_component == doctest::Approx(26.47));
  CHECK(doc.us_value == doctest::Approx(17.53));
}

TEST_CASE("ranked-US layout gives 52 rows") {
  ProfileDoc doc = build_profile(bundle(), default_result(), 4, /*rank_us=*/true);
  REQUIRE(doc.rows.size() == 52);
  bool found_us = false;
  for (const ProfileRow& row : doc.rows)
    if (row.entity == kUsIndex) {
      found_us = true;
      CHECK(row.rank == 30);  // the published 52-row layout
    }
  CHECK(found_us);
  CHECK(doc.rows.front().bar == doctest::Approx(0.0));
  CHECK(doc.rows.back().bar == doctest::Approx(1.0));

  // the other ranked-US table places US at 33
  ProfileDoc gq = build_profile(bundle(), default_result(), 10, /*rank_us=*/true);
  for (const ProfileRow& row : gq.rows)
    if (row.entity == kUsIndex) CHECK(row.rank == 33);
}

TEST_CASE("profile json matches the declared schema") {
  ProfileDoc doc = build_profile(bundle(), default_result(), 3);
  std::string js = render_profile(doc, Format::Json);
  CHECK(js.find("\"ps_id\": 3") != std::string::npos);
  CHECK(js.find("\"rows\"") != std::string::npos);
  CHECK(js.find("\"component_2020\"") != std::string::npos);
  CHECK(js.find("\"us\"") != std::string::npos);
  CHECK(js.find("\"quintile\"") != std::string::npos);

  std::string level = render_profile(build_profile(bundle(), default_result(), 1),
                                     Format::Json);
  CHECK(level.find("\"component_2020\"") == std::string::npos);
}

TEST_CASE("profile csv mirrors the rows") {
  ProfileDoc doc = build_profile(bundle(), default_result(), 1);
  std::string csv = render_profile(doc, Format::Csv);
  CHECK(csv.rfind("rank,state,value,bar,quintile\n", 0) == 0);
  CHECK(csv.find("1,MD,5.87,0.000,1\n") != std::string::npos);
  CHECK(csv.find("51,AK,26.55,1.000,5\n") != std::string::npos);
  CHECK(count_occurrences(csv, "\n") == 52);  // header + 51 rows
}

TEST_CASE("profile markdown places the unranked US row inline") {
  ProfileDoc doc = build_profile(bundle(), default_result(), 1);
  std::string md = render_profile(doc, Format::Markdown);
  CHECK(md.find("# PS1: MAF Revisions") != std::string::npos);
  auto us_pos = md.find("|  | United States | 9.22 |");
  REQUIRE(us_pos != std::string::npos);
  // between Pennsylvania (8.83) and Colorado (9.95)
  CHECK(md.find("| 21 | Pennsylvania |") < us_pos);
  CHECK(us_pos < md.find("| 22 | Colorado |"));
}

TEST_CASE("bar svg endpoints and determinism") {
  ProfileDoc doc = build_profile(bundle(), default_result(), 1);
  std::string svg = render_bar_svg(doc);
  CHECK(svg.find("width=\"0.00\"") != std::string::npos);      // minimum entity
  CHECK(svg.find("width=\"540.00\"") != std::string::npos);    // maximum fills the cell
  CHECK(count_occurrences(svg, "<rect") == 51);
  CHECK(render_bar_svg(doc) == svg);
  CHECK(render_profile(doc, Format::Svg) == svg);

  // byte-identical across a fully rebuilt pipeline
  SpsResult fresh = run_variant(bundle(), VariantConfig{});
  CHECK(render_bar_svg(build_profile(bundle(), fresh, 1)) == svg);
}

TEST_CASE("cartogram shading") {
  std::array<int, kEntityCount> shades{};
  for (int e = 0; e < kEntityCount; ++e)
    shades[e] = default_result().quintiles.quintile(e, 1);
  std::string svg = render_grid_cartogram_svg(shades, "test");
  CHECK(count_occurrences(svg, "<rect") == 51);
  // AK sits in the top quintile of ps1, MD in the lowest
  CHECK(svg.find("class=\"q5\"") < svg.find(">AK<"));
  CHECK(count_occurrences(svg, "class=\"q1\"") == 11);
  CHECK(count_occurrences(svg, "class=\"q5\"") ==
        10 + (shades[kUsIndex] == 5 ? 0 : 1));  // US tile is not drawn
  CHECK(render_grid_cartogram_svg(shades, "test") == svg);

  SUBCASE("uniform shades give uniform fills") {
    shades.fill(3);
    std::string uni = render_grid_cartogram_svg(shades, "t");
    CHECK(count_occurrences(uni, "class=\"q3\"") == 51);
  }
  SUBCASE("missing entity is an error naming the code") {
    shades[canonical_index("KS")] = 0;
    try {
      render_grid_cartogram_svg(shades, "t");
      FAIL("expected DomainError");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("KS") != std::string::npos);
    }
  }
}

TEST_CASE("largest-remainder apportionment") {
  SUBCASE("collection-method shares") {
    std::vector<double> shares = {77.1, 13.0, 5.4, 3.8, 0.7};
    auto alloc = apportion_largest_remainder(shares, 500);
    CHECK(alloc == std::vector<int>{386, 65, 27, 19, 3});
  }
  SUBCASE("single category takes every cell") {
    std::vector<double> shares = {100.0};
    CHECK(apportion_largest_remainder(shares, 500) == std::vector<int>{500});
  }
  SUBCASE("bad share sums are rejected") {
    std::vector<double> shares = {50.0, 30.0};
    CHECK_THROWS_AS(apportion_largest_remainder(shares, 500), DomainError);
    std::vector<double> neg = {104.0, -4.0};
    CHECK_THROWS_AS(apportion_largest_remainder(neg, 500), DomainError);
  }
  SUBCASE("property: totals and near-proportionality") {
    std::mt19937 rng(2024);
    for (int iter = 0; iter < 100; ++iter) {
      std::uniform_real_distribution<double> dist(0.0, 1.0);
      std::vector<double> raw(5);
      double total = 0;
      for (auto& v : raw) total += v = dist(rng) + 0.01;
      std::vector<double> shares;
      for (double v : raw) shares.push_back(v / total * 100.0);
      auto alloc = apportion_largest_remainder(shares, 500);
      int sum = 0;
      for (size_t i = 0; i < alloc.size(); ++i) {
        sum += alloc[i];
        CHECK(std::abs(alloc[i] - shares[i] * 5.0) < 1.0);  // within one cell
      }
      CHECK(sum == 500);
    }
  }
}

TEST_CASE("waffle svg") {
  std::vector<WaffleCategory> cats;
  for (const Table2Row& row : bundle().published.table2)
    cats.push_back({row.method, row.pct_2020});
  std::string svg = render_waffle_svg(cats);
  CHECK(count_occurrences(svg, "<rect") == 500);
  CHECK(count_occurrences(svg, "class=\"c1\"") == 386);
  CHECK(count_occurrences(svg, "class=\"c5\"") == 3);
  CHECK(render_waffle_svg(cats) == svg);

  std::vector<WaffleCategory> single = {{"everything", 100.0}};
  std::string uni = render_waffle_svg(single);
  CHECK(count_occurrences(uni, "class=\"c1\"") == 500);
}

TEST_CASE("reconciliation rendering") {
  ReconciliationReport rep = reconcile(bundle(), default_variant_grid());
  std::string md = render_reconciliation(rep, bundle(), Format::Markdown);
  CHECK(count_occurrences(md, "| us_") == 4);
  CHECK(count_occurrences(md, "| * |") == 1);  // best marker appears exactly once
  CHECK(md.find("2.28") != std::string::npos);
  CHECK(md.find("2.38") != std::string::npos);
  CHECK(md.find("Best variant") != std::string::npos);
  CHECK(render_reconciliation(rep, bundle(), Format::Markdown) == md);

  std::string js = render_reconciliation(rep, bundle(), Format::Json);
  CHECK(js.find("\"best_variant\"") != std::string::npos);
  CHECK(js.find("\"anomaly\"") != std::string::npos);
  CHECK(js.find("\"worked_example\": 2.38") != std::string::npos);

  std::string csv = render_reconciliation(rep, bundle(), Format::Csv);
  CHECK(count_occurrences(csv, "\n") == 5);  // header + 4 variants
}

TEST_CASE("validation rendering") {
  ValidationReport rep = validate(bundle());
  std::string md = render_validation(rep, Format::Markdown);
  CHECK(md.find("RESULT: PASS") != std::string::npos);
  CHECK(md.find("documented errata") != std::string::npos);
  std::string js = render_validation(rep, Format::Json);
  CHECK(js.find("\"pass\": true") != std::string::npos);
  CHECK(js.find("\"undocumented_failures\": 0") != std::string::npos);
}

TEST_CASE("atomic write leaves no temp file behind") {
  auto dir = std::filesystem::temp_directory_path() / "riskdex_atomic_test";
  std::filesystem::create_directories(dir);
  auto path = dir / "artifact.md";
  write_file_atomic(path, "payload\n");
  CHECK(testutil::slurp(path) == "payload\n");
  CHECK_FALSE(std::filesystem::exists(dir / "artifact.md.tmp"));
  write_file_atomic(path, "rewritten\n");
  CHECK(testutil::slurp(path) == "rewritten\n");
  std::filesystem::remove_all(dir);
}

TEST_CASE("stats rendering formats") {
  std::vector<PsSummary> stats;
  for (int ps = 1; ps <= 10; ++ps)
    stats.push_back(summary_stats(bundle().ps.column(ps), ps));
  std::string plain = render_stats_plain(stats, std::nullopt);
  CHECK(plain.find("ps1 11.3 5.9 26.6 20.7 1.8") != std::string::npos);
  CHECK(plain.find("ps5 -0.5 -2.1 1.7 3.9 -8.4") != std::string::npos);
  CHECK(plain.find("ps6 0.5 -1.3 1.6 2.8 6.0") != std::string::npos);
  CHECK(plain.find("ps10 2.1 0.1 11.3 11.1 5.3") != std::string::npos);

  std::string md = render_stats(stats, std::nullopt, Format::Markdown);
  CHECK(md.find("| 1 | MAF Revisions | 11.3 | 5.9 | 26.6 | 20.7 | 1.8 |") !=
        std::string::npos);
  std::string csv = render_stats(stats, std::nullopt, Format::Csv);
  CHECK(csv.find("1,11.3,5.9,26.6,20.7,1.8") != std::string::npos);
}
