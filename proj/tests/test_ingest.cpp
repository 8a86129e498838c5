#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "riskdex/ingest.hpp"
#include "test_util.hpp"

using namespace riskdex;
using testutil::bundle;
using testutil::data_dir;

TEST_CASE("a1 loads with spot values") {
  const PsMatrix& m = bundle().ps;
  int al = canonical_index("AL"), us = canonical_index("US");
  CHECK(m.value(al, 1) == doctest::Approx(14.38));
  CHECK(m.value(us, 3) == doctest::Approx(17.53));
  CHECK(m.rel_diff[al] == doctest::Approx(2.11));
  CHECK(m.rel_diff[canonical_index("OR")] == doctest::Approx(0.00));
  CHECK(m.value(canonical_index("DE"), 10) == doctest::Approx(11.26));
  // difference statistics may be negative, levels are not
  CHECK(m.value(al, 5) == doctest::Approx(-1.72));
}

TEST_CASE("a2 loads 51 rows with spot values") {
  const WeightMatrix& w = bundle().weights;
  int al = canonical_index("AL");
  CHECK(w.raw[al][3 - 1] == doctest::Approx(25.44));
  CHECK(w.raw[al][10 - 1] == doctest::Approx(0.13));
  CHECK(w.raw[canonical_index("NH")][10 - 1] == doctest::Approx(0.00));
  CHECK_THROWS_AS(w.row(canonical_index("US")), DomainError);
}

TEST_CASE("a3 loads with spot values") {
  const Components2020& c = bundle().components;
  CHECK(c.value(canonical_index("AL"), 3) == doctest::Approx(25.44));
  CHECK(c.value(canonical_index("US"), 8) == doctest::Approx(0.88));
  CHECK_THROWS_AS(c.value(0, 1), DomainError);  // ps1 is not a difference
}

TEST_CASE("published reference loads") {
  const PublishedReference& p = bundle().published;
  CHECK(p.sps[canonical_index("NE")] == doctest::Approx(1.21));
  CHECK(p.sps[canonical_index("AL")] == doctest::Approx(2.28));
  CHECK(p.sps[canonical_index("US")] == doctest::Approx(3.28));

  REQUIRE(p.table4.size() == 7);
  CHECK(p.table4[0].entity == canonical_index("AK"));
  CHECK(p.table4[0].sps == doctest::Approx(4.5));
  CHECK(p.table4[0].phase_pct[0] == doctest::Approx(40.5));
  CHECK(p.table4[0].phase_pct[1] == doctest::Approx(53.6));

  REQUIRE(p.table2.size() == 5);
  double s20 = 0;
  for (const auto& r : p.table2) s20 += r.pct_2020;
  CHECK(s20 == doctest::Approx(100.0).epsilon(1e-9));

  for (int ps = 1; ps <= 10; ++ps) {
    size_t n = p.profile_orders[ps - 1].size();
    CHECK(n == kEntityCount);
  }
  // the two 52-row layouts carry a ranked US row
  for (const auto& row : p.profile_orders[4 - 1])
    if (row.entity == kUsIndex) CHECK(row.rank == 30);
  for (const auto& row : p.profile_orders[1 - 1])
    if (row.entity == kUsIndex) CHECK_FALSE(row.rank.has_value());
}

TEST_CASE("errata registry loads the documented deviations") {
  const ErrataRegistry& e = bundle().errata;
  CHECK(e.covers("profile_value", 2, canonical_index("OH")));
  CHECK(e.covers("profile_value", 10, canonical_index("AK")));
  CHECK(e.covers("profile_value", 10, canonical_index("ME")));
  CHECK(e.find("worked_example_sps", 0, canonical_index("AL")) != nullptr);
}

TEST_CASE("profile strings load") {
  const ProfileStrings& s = bundle().strings;
  CHECK(s.ps[0].title == "MAF Revisions");
  CHECK_FALSE(s.ps[9].calc_note.empty());
  CHECK_FALSE(s.sps.title.empty());
}

TEST_CASE("loaders reject structural defects") {
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_ps_matrix(data_dir() / "no_such.csv"), ParseError);
  }
  SUBCASE("missing US row names US") {
    testutil::FixtureCopy fx("a1_nous");
    std::string s = testutil::slurp(fx.dir() / "a1_process_statistics.csv");
    auto nl = s.find('\n');
    auto second = s.find('\n', nl + 1);
    s.erase(nl + 1, second - nl);  // drop the US data row
    testutil::spit(fx.dir() / "a1_process_statistics.csv", s);
    try {
      load_ps_matrix(fx.dir() / "a1_process_statistics.csv");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("US") != std::string::npos);
    }
  }
  SUBCASE("duplicate entity") {
    testutil::FixtureCopy fx("a1_dup");
    fx.replace_in("a1_process_statistics.csv", "\nAK,", "\nAL,");
    CHECK_THROWS_AS(load_ps_matrix(fx.dir() / "a1_process_statistics.csv"), ParseError);
  }
  SUBCASE("non-numeric cell reports row and column") {
    testutil::FixtureCopy fx("a1_nan");
    fx.replace_in("a1_process_statistics.csv", "14.38", "n/a");
    try {
      load_ps_matrix(fx.dir() / "a1_process_statistics.csv");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      std::string msg = e.what();
      CHECK(msg.find("row 3") != std::string::npos);
      CHECK(msg.find("column 3") != std::string::npos);
    }
  }
  SUBCASE("wrong column count") {
    testutil::FixtureCopy fx("a1_cols");
    fx.replace_in("a1_process_statistics.csv", "AL,2.11,", "AL,2.11,1.0,");
    CHECK_THROWS_AS(load_ps_matrix(fx.dir() / "a1_process_statistics.csv"), ParseError);
  }
  SUBCASE("header mismatch") {
    testutil::FixtureCopy fx("a1_hdr");
    fx.replace_in("a1_process_statistics.csv", "state,rel_diff", "state,reldiff");
    CHECK_THROWS_AS(load_ps_matrix(fx.dir() / "a1_process_statistics.csv"), ParseError);
  }
  SUBCASE("negative weight names the cell") {
    testutil::FixtureCopy fx("a2_neg");
    fx.replace_in("a2_weights.csv", "AL,14.38", "AL,-14.38");
    try {
      load_weights(fx.dir() / "a2_weights.csv");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      std::string msg = e.what();
      CHECK(msg.find("AL") != std::string::npos);
      CHECK(msg.find("ps1") != std::string::npos);
    }
  }
  SUBCASE("unexpected US row in weights") {
    testutil::FixtureCopy fx("a2_us");
    fx.replace_in("a2_weights.csv", "\nAL,", "\nUS,1,1,1,1,1,1,1,1,1,1\nAL,");
    CHECK_THROWS_AS(load_weights(fx.dir() / "a2_weights.csv"), ParseError);
  }
  SUBCASE("negative component") {
    testutil::FixtureCopy fx("a3_neg");
    fx.replace_in("a3_components_2020.csv", "25.44", "-25.44");
    CHECK_THROWS_AS(load_components(fx.dir() / "a3_components_2020.csv"), ParseError);
  }
  SUBCASE("table2 column-sum violation") {
    testutil::FixtureCopy fx("t2_sum");
    fx.replace_in("published_table2.csv", "77.1", "70.1");
    CHECK_THROWS_AS(load_published(fx.dir()), ParseError);
  }
}

TEST_CASE("loader tolerates CRLF line endings") {
  testutil::FixtureCopy fx("a1_crlf");
  std::string s = testutil::slurp(fx.dir() / "a1_process_statistics.csv");
  std::string crlf;
  for (char c : s) {
    if (c == '\n') crlf += '\r';
    crlf += c;
  }
  testutil::spit(fx.dir() / "a1_process_statistics.csv", crlf);
  PsMatrix m = load_ps_matrix(fx.dir() / "a1_process_statistics.csv");
  CHECK(m.value(canonical_index("AL"), 1) == doctest::Approx(14.38));
}

TEST_CASE("round-trip serialization is byte identical") {
  const DataBundle& b = bundle();
  CHECK(serialize_ps_matrix(b.ps) == testutil::slurp(data_dir() / "a1_process_statistics.csv"));
  CHECK(serialize_weights(b.weights) == testutil::slurp(data_dir() / "a2_weights.csv"));
  CHECK(serialize_components(b.components) ==
        testutil::slurp(data_dir() / "a3_components_2020.csv"));
  CHECK(serialize_published_sps(b.published) ==
        testutil::slurp(data_dir() / "published_sps.csv"));
  CHECK(serialize_table4(b.published) == testutil::slurp(data_dir() / "published_table4.csv"));
  CHECK(serialize_table2(b.published) == testutil::slurp(data_dir() / "published_table2.csv"));
  for (int ps = 1; ps <= 10; ++ps) {
    CHECK(serialize_profile_order(b.published, ps) ==
          testutil::slurp(data_dir() /
                          ("published_profile_order_ps" + std::to_string(ps) + ".csv")));
  }
  CHECK(serialize_errata(b.errata) == testutil::slurp(data_dir() / "errata.csv"));
}

TEST_CASE("validate passes on shipped fixtures modulo documented errata") {
  ValidationReport rep = validate(bundle());
  CHECK(rep.undocumented_failures() == 0);
  CHECK(rep.ok());
  // every failing check is one of the docmented profile-value deviations
  for (const auto& c : rep.checks) {
    if (c.pass) continue;
    CHECK(c.check_id == "profile_value");
    CHECK(c.documented);
  }
  CHECK(rep.failures() == 6);
}

TEST_CASE("validate spot checks") {
  ValidationReport rep = validate(bundle());
  int al = canonical_index("AL"), fl = canonical_index("FL");
  bool saw_al_ps5 = false, saw_fl_ps9 = false, saw_al_ps3_2010 = false;
  for (const auto& c : rep.checks) {
    if (c.check_id == "weight_vs_component" && c.entity == al && c.ps_id == 5) {
      saw_al_ps5 = true;
      CHECK(c.pass);
      CHECK(c.expected == doctest::Approx(4.34));
      CHECK(c.actual == doctest::Approx(4.34));
    }
    if (c.check_id == "weight_vs_component" && c.entity == fl && c.ps_id == 9) {
      saw_fl_ps9 = true;
      CHECK(c.pass);  // |0.06 - 0.07| = 0.01 within 0.015
    }
    if (c.check_id == "derived_2010_nonneg" && c.entity == al && c.ps_id == 3) {
      saw_al_ps3_2010 = true;
      CHECK(c.pass);
      CHECK(c.actual == doctest::Approx(10.26));
    }
  }
  CHECK(saw_al_ps5);
  CHECK(saw_fl_ps9);
  CHECK(saw_al_ps3_2010);
}

TEST_CASE("canonical entity order equals the a1 fixture row order") {
  std::string a1 = testutil::slurp(data_dir() / "a1_process_statistics.csv");
  std::vector<std::string> file_order;
  size_t pos = a1.find('\n') + 1;  // skip header
  while (pos < a1.size()) {
    size_t comma = a1.find(',', pos);
    file_order.push_back(a1.substr(pos, comma - pos));
    pos = a1.find('\n', pos) + 1;
  }
  REQUIRE(file_order.size() == kEntityCount);
  for (int e = 0; e < kEntityCount; ++e) CHECK(file_order[e] == entity_code(e));
}

TEST_CASE("validate is deterministic") {
  ValidationReport a = validate(bundle());
  ValidationReport b = validate(bundle());
  REQUIRE(a.checks.size() == b.checks.size());
  for (size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].check_id == b.checks[i].check_id);
    CHECK(a.checks[i].pass == b.checks[i].pass);
    CHECK(a.checks[i].actual == b.checks[i].actual);
  }
}

TEST_CASE("validate flags an injected negative level statistic") {
  testutil::FixtureCopy fx("valneg");
  fx.replace_in("a1_process_statistics.csv", "AL,2.11,14.38", "AL,2.11,-1.00");
  DataBundle mutated = load_bundle(fx.dir());
  ValidationReport rep = validate(mutated);
  CHECK_FALSE(rep.ok());
  bool named = false;
  for (const auto& c : rep.checks)
    if (!c.pass && !c.documented && c.check_id == "level_nonneg" &&
        c.entity == canonical_index("AL") && c.ps_id == 1)
      named = true;
  CHECK(named);
}
