#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace riskdex {

inline constexpr int kEntityCount = 52;  // 50 states + DC + US
inline constexpr int kStateCount = 51;   // everything except US
inline constexpr int kPsCount = 10;
inline constexpr int kPhaseCount = 5;
inline constexpr int kUsIndex = 0;

// Data/schema problems while reading fixtures (CLI exit 2).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Semantic violations: unknown codes, degenerate inputs (CLI exit 1).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Phase { MafDevelopment, SelfResponse, Nrfu, DataProcessing, GroupQuarters };
enum class PsKind { Level2020, Difference2020Minus2010 };
enum class WeightSource { SelfValue, Component2020, RebasedIndependent };

std::string_view phase_name(Phase p);
std::string_view phase_abbrev(Phase p);

struct PsDef {
  int id = 0;  // 1..10
  std::string_view short_name;
  Phase phase = Phase::MafDevelopment;
  PsKind kind = PsKind::Level2020;
  WeightSource weight_source = WeightSource::SelfValue;
  std::string_view universe;

  bool is_difference() const { return kind == PsKind::Difference2020Minus2010; }
};

// The fixed ten-statistic catalog, ordered by id.
std::span<const PsDef, kPsCount> catalog();
const PsDef& ps_def(int ps_id);  // throws DomainError for ids outside 1..10

// The six difference statistics, ascending.
inline constexpr std::array<int, 6> kDifferencePsIds = {3, 4, 5, 6, 8, 9};
// Index of a difference PS within kDifferencePsIds, or -1.
int difference_index(int ps_id);

struct Entity {
  std::string_view code;  // "US", "AL", ...
  std::string_view name;  // display name
};

std::span<const Entity, kEntityCount> entities();
int canonical_index(std::string_view code);  // throws DomainError, names the code
std::string_view entity_code(int index);
std::string_view entity_name(int index);
inline bool is_us(int index) { return index == kUsIndex; }

// Entity-indexed rows (canonical order), ps columns indexed by ps_id-1.
using PsRow = std::array<double, kPsCount>;

struct PsMatrix {
  std::array<PsRow, kEntityCount> values{};
  std::array<double, kEntityCount> rel_diff{};

  double value(int entity, int ps_id) const { return values[entity][ps_id - 1]; }
  std::array<double, kEntityCount> column(int ps_id) const {
    std::array<double, kEntityCount> col{};
    for (int e = 0; e < kEntityCount; ++e) col[e] = values[e][ps_id - 1];
    return col;
  }
};

// No US row is provided by the source table; row 0 stays zero and must not
// be read as data.
struct WeightMatrix {
  std::array<PsRow, kEntityCount> raw{};

  const PsRow& row(int entity) const {
    if (is_us(entity)) throw DomainError("weight matrix has no US row");
    return raw[entity];
  }
};

// 2020-side components for the six difference statistics.
struct Components2020 {
  std::array<std::array<double, 6>, kEntityCount> values{};

  double value(int entity, int ps_id) const {
    int di = difference_index(ps_id);
    if (di < 0) throw DomainError("ps" + std::to_string(ps_id) + " has no 2020 component");
    return values[entity][di];
  }
};

enum class TieBreak { ByCanonicalOrder, ByReverseCanonical };
enum class UsSpsMode { Skip, DeriveWhereAvailable };

struct VariantConfig {
  bool include_us_in_quintiles = true;
  bool zero_negative_weights = true;
  TieBreak tie_break = TieBreak::ByCanonicalOrder;
  UsSpsMode us_sps = UsSpsMode::Skip;
  std::array<int, 5> quintile_n51_scheme{11, 10, 10, 10, 10};

  std::string name() const;      // short stable identifier for reports
  void check_valid() const;      // throws DomainError on a bad bucket scheme
};

struct QuintileMatrix {
  // 1..5 per (entity, ps); 0 marks an entity excluded from the ranking.
  std::array<std::array<int, kPsCount>, kEntityCount> q{};
  bool includes_us = true;

  int quintile(int entity, int ps_id) const { return q[entity][ps_id - 1]; }
};

struct SpsResult {
  VariantConfig config;
  QuintileMatrix quintiles;
  std::array<bool, kEntityCount> computed{};
  std::array<double, kEntityCount> sps{};
  std::array<std::array<double, kPhaseCount>, kEntityCount> phase_pct{};
  std::array<PsRow, kEntityCount> scaled_weights{};
  std::array<std::vector<int>, kEntityCount> zeroed;  // sorted ps ids
};

struct Table4Row {
  int entity = 0;
  double sps = 0;
  std::array<double, kPhaseCount> phase_pct{};
};

struct Table2Row {
  std::string method;
  double pct_2020 = 0;
  double pct_2010 = 0;
};

struct ProfileOrderRow {
  int entity = 0;
  std::optional<int> rank;  // empty for the inline unranked US row
  double value = 0;
};

struct PublishedReference {
  std::array<double, kEntityCount> sps{};
  std::vector<Table4Row> table4;
  std::vector<Table2Row> table2;
  std::array<std::vector<ProfileOrderRow>, kPsCount> profile_orders;
};

struct Erratum {
  std::string check_id;
  int ps_id = 0;
  int entity = -1;
  double expected = 0;
  double actual = 0;
  std::string note;
};

struct ErrataRegistry {
  std::vector<Erratum> entries;

  bool covers(std::string_view check_id, int ps_id, int entity) const;
  const Erratum* find(std::string_view check_id, int ps_id, int entity) const;
};

struct ProfileText {
  std::string title;
  std::string calc_note;
  std::string interpretation;
};

struct ProfileStrings {
  std::array<ProfileText, kPsCount> ps;
  ProfileText sps;
};

}  // namespace riskdex
