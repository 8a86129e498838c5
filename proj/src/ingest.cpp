#include "riskdex/ingest.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace riskdex {

namespace {

constexpr double kWeightCrossTol = 0.015;     // fixtures carry 2 decimals
constexpr double kComponentSlack = -0.005;
constexpr double kProfileValueTol = 0.005;

std::string fmt(double v, int decimals) {
  if (v == 0.0) v = 0.0;  // never print "-0.00"
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

struct CsvTable {
  std::filesystem::path path;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // data rows, 1-based reporting
};

CsvTable read_csv(const std::filesystem::path& path, const std::string& expected_header) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  CsvTable t;
  t.path = path;
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path.string() + ": empty file");
  t.header = split_csv_line(line);
  if (line != expected_header && (!line.ends_with("\r") || line.substr(0, line.size() - 1) != expected_header))
    throw ParseError(path.string() + ": header mismatch, expected \"" + expected_header + "\"");
  size_t n_cols = t.header.size();
  int row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != n_cols)
      throw ParseError(path.string() + ": row " + std::to_string(row_no) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(n_cols));
    t.rows.push_back(std::move(fields));
  }
  return t;
}

double parse_cell(const CsvTable& t, size_t row, size_t col) {
  const std::string& s = t.rows[row][col];
  size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty())
    throw ParseError(t.path.string() + ": row " + std::to_string(row + 2) + " column " +
                     std::to_string(col + 1) + ": non-numeric cell \"" + s + "\"");
  return v;
}

int parse_entity(const CsvTable& t, size_t row) {
  const std::string& code = t.rows[row][0];
  try {
    return canonical_index(code);
  } catch (const DomainError& e) {
    throw ParseError(t.path.string() + ": row " + std::to_string(row + 2) + ": " + e.what());
  }
}

void check_entity_set(const CsvTable& t, const std::set<int>& seen, bool expect_us) {
  for (int e = expect_us ? 0 : 1; e < kEntityCount; ++e)
    if (!seen.count(e))
      throw ParseError(t.path.string() + ": missing entity row \"" +
                       std::string(entity_code(e)) + "\"");
}

}  // namespace

PsMatrix load_ps_matrix(const std::filesystem::path& path) {
  CsvTable t = read_csv(path, "state,rel_diff,ps1,ps2,ps3,ps4,ps5,ps6,ps7,ps8,ps9,ps10");
  PsMatrix m;
  std::set<int> seen;
  for (size_t r = 0; r < t.rows.size(); ++r) {
    int e = parse_entity(t, r);
    if (!seen.insert(e).second)
      throw ParseError(path.string() + ": duplicate entity row \"" +
                       std::string(entity_code(e)) + "\" at row " + std::to_string(r + 2));
    m.rel_diff[e] = parse_cell(t, r, 1);
    for (int p = 1; p <= kPsCount; ++p) m.values[e][p - 1] = parse_cell(t, r, 1 + p);
  }
  check_entity_set(t, seen, /*expect_us=*/true);
  return m;
}

WeightMatrix load_weights(const std::filesystem::path& path) {
  CsvTable t = read_csv(path, "state,ps1,ps2,ps3,ps4,ps5,ps6,ps7,ps8,ps9,ps10");
  WeightMatrix m;
  std::set<int> seen;
  for (size_t r = 0; r < t.rows.size(); ++r) {
    int e = parse_entity(t, r);
    if (is_us(e))
      throw ParseError(path.string() + ": unexpected \"US\" row, the source table has none");
    if (!seen.insert(e).second)
      throw ParseError(path.string() + ": duplicate entity row \"" +
                       std::string(entity_code(e)) + "\" at row " + std::to_string(r + 2));
    for (int p = 1; p <= kPsCount; ++p) {
      double v = parse_cell(t, r, p);
      if (v < 0)
        throw ParseError(path.string() + ": negative weight at (" +
                         std::string(entity_code(e)) + ", ps" + std::to_string(p) + ")");
      m.raw[e][p - 1] = v;
    }
  }
  check_entity_set(t, seen, /*expect_us=*/false);
  return m;
}

Components2020 load_components(const std::filesystem::path& path) {
  CsvTable t = read_csv(path, "state,ps3,ps4,ps5,ps6,ps8,ps9");
  Components2020 c;
  std::set<int> seen;
  for (size_t r = 0; r < t.rows.size(); ++r) {
    int e = parse_entity(t, r);
    if (!seen.insert(e).second)
      throw ParseError(path.string() + ": duplicate entity row \"" +
                       std::string(entity_code(e)) + "\" at row " + std::to_string(r + 2));
    for (size_t i = 0; i < kDifferencePsIds.size(); ++i) {
      double v = parse_cell(t, r, i + 1);
      if (v < 0)
        throw ParseError(path.string() + ": negative component at (" +
                         std::string(entity_code(e)) + ", ps" +
                         std::to_string(kDifferencePsIds[i]) + ")");
      c.values[e][i] = v;
    }
  }
  check_entity_set(t, seen, /*expect_us=*/true);
  return c;
}

PublishedReference load_published(const std::filesystem::path& dir) {
  PublishedReference p;

  CsvTable sps = read_csv(dir / "published_sps.csv", "state,sps");
  std::set<int> seen;
  for (size_t r = 0; r < sps.rows.size(); ++r) {
    int e = parse_entity(sps, r);
    if (!seen.insert(e).second)
      throw ParseError(sps.path.string() + ": duplicate entity row at " + std::to_string(r + 2));
    p.sps[e] = parse_cell(sps, r, 1);
  }
  check_entity_set(sps, seen, /*expect_us=*/true);

  CsvTable t4 = read_csv(dir / "published_table4.csv",
                         "state,sps,maf_pct,sr_pct,nrfu_pct,dp_pct,gq_pct");
  for (size_t r = 0; r < t4.rows.size(); ++r) {
    Table4Row row;
    row.entity = parse_entity(t4, r);
    row.sps = parse_cell(t4, r, 1);
    for (int ph = 0; ph < kPhaseCount; ++ph) row.phase_pct[ph] = parse_cell(t4, r, 2 + ph);
    p.table4.push_back(row);
  }
  if (p.table4.size() != 7)
    throw ParseError(t4.path.string() + ": expected 7 rows, found " +
                     std::to_string(p.table4.size()));

  CsvTable t2 = read_csv(dir / "published_table2.csv", "method,pct_2020,pct_2010");
  double s20 = 0, s10 = 0;
  for (size_t r = 0; r < t2.rows.size(); ++r) {
    Table2Row row;
    row.method = t2.rows[r][0];
    row.pct_2020 = parse_cell(t2, r, 1);
    row.pct_2010 = parse_cell(t2, r, 2);
    s20 += row.pct_2020;
    s10 += row.pct_2010;
    p.table2.push_back(std::move(row));
  }
  if (std::abs(s20 - 100.0) > 0.1 || std::abs(s10 - 100.0) > 0.1)
    throw ParseError(t2.path.string() + ": column sums " + fmt(s20, 2) + "/" + fmt(s10, 2) +
                     " are not 100 within 0.1");

  for (int ps = 1; ps <= kPsCount; ++ps) {
    auto path = dir / ("published_profile_order_ps" + std::to_string(ps) + ".csv");
    CsvTable t = read_csv(path, "rank,state,value");
    std::set<int> in_profile;
    for (size_t r = 0; r < t.rows.size(); ++r) {
      ProfileOrderRow row;
      const std::string& rank = t.rows[r][0];
      if (!rank.empty()) {
        try {
          row.rank = std::stoi(rank);
        } catch (const std::exception&) {
          throw ParseError(path.string() + ": row " + std::to_string(r + 2) +
                           ": bad rank \"" + rank + "\"");
        }
      }
      try {
        row.entity = canonical_index(t.rows[r][1]);
      } catch (const DomainError& e) {
        throw ParseError(path.string() + ": row " + std::to_string(r + 2) + ": " + e.what());
      }
      row.value = parse_cell(t, r, 2);
      if (!in_profile.insert(row.entity).second)
        throw ParseError(path.string() + ": duplicate entity row at " + std::to_string(r + 2));
      p.profile_orders[ps - 1].push_back(row);
    }
    check_entity_set(t, in_profile, /*expect_us=*/true);
  }
  return p;
}

ErrataRegistry load_errata(const std::filesystem::path& path) {
  CsvTable t = read_csv(path, "check_id,ps_id,state,expected,actual,note");
  ErrataRegistry reg;
  for (size_t r = 0; r < t.rows.size(); ++r) {
    Erratum e;
    e.check_id = t.rows[r][0];
    e.ps_id = static_cast<int>(parse_cell(t, r, 1));
    if (t.rows[r][2].empty()) {
      e.entity = -1;
    } else {
      try {
        e.entity = canonical_index(t.rows[r][2]);
      } catch (const DomainError& ex) {
        throw ParseError(path.string() + ": row " + std::to_string(r + 2) + ": " + ex.what());
      }
    }
    e.expected = parse_cell(t, r, 3);
    e.actual = parse_cell(t, r, 4);
    e.note = t.rows[r][5];
    reg.entries.push_back(std::move(e));
  }
  return reg;
}

ProfileStrings load_profile_strings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  auto read = [&](const std::string& key) {
    if (!j.contains(key))
      throw ParseError(path.string() + ": missing entry \"" + key + "\"");
    const auto& o = j.at(key);
    return ProfileText{o.value("title", ""), o.value("calc_note", ""),
                       o.value("interpretation", "")};
  };
  ProfileStrings s;
  for (int ps = 1; ps <= kPsCount; ++ps) s.ps[ps - 1] = read("ps" + std::to_string(ps));
  s.sps = read("sps");
  return s;
}

DataBundle load_bundle(const std::filesystem::path& dir) {
  DataBundle b;
  b.ps = load_ps_matrix(dir / "a1_process_statistics.csv");
  b.weights = load_weights(dir / "a2_weights.csv");
  b.components = load_components(dir / "a3_components_2020.csv");
  b.published = load_published(dir);
  b.errata = load_errata(dir / "errata.csv");
  b.strings = load_profile_strings(dir / "profile_text.json");
  return b;
}

// ---- serializers ----

std::string serialize_ps_matrix(const PsMatrix& m) {
  std::string out = "state,rel_diff,ps1,ps2,ps3,ps4,ps5,ps6,ps7,ps8,ps9,ps10\n";
  for (int e = 0; e < kEntityCount; ++e) {
    out += entity_code(e);
    out += "," + fmt(m.rel_diff[e], 2);
    for (int p = 1; p <= kPsCount; ++p) out += "," + fmt(m.value(e, p), 2);
    out += "\n";
  }
  return out;
}

std::string serialize_weights(const WeightMatrix& m) {
  std::string out = "state,ps1,ps2,ps3,ps4,ps5,ps6,ps7,ps8,ps9,ps10\n";
  for (int e = 1; e < kEntityCount; ++e) {
    out += entity_code(e);
    for (int p = 1; p <= kPsCount; ++p) out += "," + fmt(m.raw[e][p - 1], 2);
    out += "\n";
  }
  return out;
}

std::string serialize_components(const Components2020& c) {
  std::string out = "state,ps3,ps4,ps5,ps6,ps8,ps9\n";
  for (int e = 0; e < kEntityCount; ++e) {
    out += entity_code(e);
    for (int ps : kDifferencePsIds) out += "," + fmt(c.value(e, ps), 2);
    out += "\n";
  }
  return out;
}

std::string serialize_published_sps(const PublishedReference& p) {
  std::string out = "state,sps\n";
  for (int e = 0; e < kEntityCount; ++e)
    out += std::string(entity_code(e)) + "," + fmt(p.sps[e], 2) + "\n";
  return out;
}

std::string serialize_table4(const PublishedReference& p) {
  std::string out = "state,sps,maf_pct,sr_pct,nrfu_pct,dp_pct,gq_pct\n";
  for (const auto& r : p.table4) {
    out += std::string(entity_code(r.entity)) + "," + fmt(r.sps, 1);
    for (double v : r.phase_pct) out += "," + fmt(v, 1);
    out += "\n";
  }
  return out;
}

std::string serialize_table2(const PublishedReference& p) {
  std::string out = "method,pct_2020,pct_2010\n";
  for (const auto& r : p.table2)
    out += r.method + "," + fmt(r.pct_2020, 1) + "," + fmt(r.pct_2010, 1) + "\n";
  return out;
}

std::string serialize_profile_order(const PublishedReference& p, int ps_id) {
  ps_def(ps_id);  // id check
  std::string out = "rank,state,value\n";
  for (const auto& r : p.profile_orders[ps_id - 1]) {
    out += r.rank ? std::to_string(*r.rank) : std::string();
    out += "," + std::string(entity_code(r.entity)) + "," + fmt(r.value, 2) + "\n";
  }
  return out;
}

std::string serialize_errata(const ErrataRegistry& e) {
  std::string out = "check_id,ps_id,state,expected,actual,note\n";
  for (const auto& r : e.entries) {
    out += r.check_id + "," + std::to_string(r.ps_id) + ",";
    out += r.entity >= 0 ? std::string(entity_code(r.entity)) : std::string();
    out += "," + fmt(r.expected, 2) + "," + fmt(r.actual, 2) + "," + r.note + "\n";
  }
  return out;
}

// ---- validation ----

int ValidationReport::failures() const {
  int n = 0;
  for (const auto& c : checks) n += !c.pass;
  return n;
}

int ValidationReport::undocumented_failures() const {
  int n = 0;
  for (const auto& c : checks) n += !c.pass && !c.documented;
  return n;
}

ValidationReport validate(const DataBundle& bundle) {
  ValidationReport rep;
  rep.errata = bundle.errata.entries;

  auto push = [&](std::string check_id, int ps, int entity, double expected,
                  double actual, double tol, bool pass) {
    bool documented = !pass && bundle.errata.covers(check_id, ps, entity);
    rep.checks.push_back(
        {std::move(check_id), ps, entity, expected, actual, tol, pass, documented});
  };

  // (a) weights for component-sourced difference statistics match the 2020
  // components; (b) weights for self-valued statistics match the values.
  for (int e = 1; e < kEntityCount; ++e) {
    for (const PsDef& def : catalog()) {
      double w = bundle.weights.raw[e][def.id - 1];
      if (def.weight_source == WeightSource::Component2020) {
        double c = bundle.components.value(e, def.id);
        push("weight_vs_component", def.id, e, c, w, kWeightCrossTol,
             std::abs(w - c) <= kWeightCrossTol);
      } else if (def.weight_source == WeightSource::SelfValue) {
        double v = bundle.ps.value(e, def.id);
        push("weight_vs_value", def.id, e, v, w, kWeightCrossTol,
             std::abs(w - v) <= kWeightCrossTol);
      }
    }
  }

  // (c) derived 2010 component must be a plausible percentage.
  for (int e = 0; e < kEntityCount; ++e) {
    for (int ps : kDifferencePsIds) {
      double d = bundle.components.value(e, ps) - bundle.ps.value(e, ps);
      push("derived_2010_nonneg", ps, e, kComponentSlack, d, kComponentSlack,
           d >= kComponentSlack);
    }
  }

  // (d) published profile order is nondecreasing in the a1 column.
  for (int ps = 1; ps <= kPsCount; ++ps) {
    const auto& order = bundle.published.profile_orders[ps - 1];
    bool pass = true;
    int offender = -1;
    double prev = 0, cur = 0;
    for (size_t i = 1; i < order.size(); ++i) {
      double a = bundle.ps.value(order[i - 1].entity, ps);
      double b = bundle.ps.value(order[i].entity, ps);
      if (b < a - 1e-9) {
        pass = false;
        offender = order[i].entity;
        prev = a;
        cur = b;
        break;
      }
    }
    push("profile_order", ps, offender, prev, cur, 0.0, pass);
  }

  // (e) published profile values match the a1 column (documented errata
  // are the expected exceptions).
  for (int ps = 1; ps <= kPsCount; ++ps) {
    for (const auto& row : bundle.published.profile_orders[ps - 1]) {
      double a1v = bundle.ps.value(row.entity, ps);
      push("profile_value", ps, row.entity, a1v, row.value, kProfileValueTol,
           std::abs(row.value - a1v) <= kProfileValueTol);
    }
  }

  // (f) level statistics cannot be negative.
  for (int e = 0; e < kEntityCount; ++e) {
    for (const PsDef& def : catalog()) {
      if (def.is_difference()) continue;
      double v = bundle.ps.value(e, def.id);
      push("level_nonneg", def.id, e, 0.0, v, 0.0, v >= 0.0);
    }
  }

  return rep;
}

}  // namespace riskdex
