#include "riskdex/core_model.hpp"

#include <algorithm>

namespace riskdex {

namespace {

constexpr std::array<PsDef, kPsCount> kCatalog = {{
    {1, "MAF Revisions", Phase::MafDevelopment, PsKind::Level2020,
     WeightSource::SelfValue, "all MAF addresses"},
    {2, "Non-Matching No IDs", Phase::SelfResponse, PsKind::Level2020,
     WeightSource::RebasedIndependent, "housing units submitting non-ID questionnaires"},
    {3, "Multiple Responses", Phase::SelfResponse, PsKind::Difference2020Minus2010,
     WeightSource::Component2020, "occupied housing units"},
    {4, "URC", Phase::SelfResponse, PsKind::Difference2020Minus2010,
     WeightSource::RebasedIndependent, "occupied housing units of two or more people"},
    {5, "Proxy", Phase::Nrfu, PsKind::Difference2020Minus2010,
     WeightSource::Component2020, "persons in occupied housing units"},
    {6, "Count Only", Phase::Nrfu, PsKind::Difference2020Minus2010,
     WeightSource::Component2020, "occupied housing units"},
    {7, "Admin Recs", Phase::Nrfu, PsKind::Level2020,
     WeightSource::SelfValue, "occupied housing units"},
    {8, "Status Imputation", Phase::DataProcessing, PsKind::Difference2020Minus2010,
     WeightSource::Component2020, "MAF units"},
    {9, "Count Imputation", Phase::DataProcessing, PsKind::Difference2020Minus2010,
     WeightSource::Component2020, "occupied housing units of known status"},
    {10, "GQ Imputation", Phase::GroupQuarters, PsKind::Level2020,
     WeightSource::RebasedIndependent, "group-quarters population in TEA 1 and 6"},
}};

// Row order of the a1 fixture: US first, then states with DC after DE.
constexpr std::array<Entity, kEntityCount> kEntities = {{
    {"US", "United States"},
    {"AL", "Alabama"},       {"AK", "Alaska"},        {"AZ", "Arizona"},
    {"AR", "Arkansas"},      {"CA", "California"},    {"CO", "Colorado"},
    {"CT", "Connecticut"},   {"DE", "Delaware"},      {"DC", "Washington, D.C."},
    {"FL", "Florida"},       {"GA", "Georgia"},       {"HI", "Hawaii"},
    {"ID", "Idaho"},         {"IL", "Illinois"},      {"IN", "Indiana"},
    {"IA", "Iowa"},          {"KS", "Kansas"},        {"KY", "Kentucky"},
    {"LA", "Louisiana"},     {"ME", "Maine"},         {"MD", "Maryland"},
    {"MA", "Massachusetts"}, {"MI", "Michigan"},      {"MN", "Minnesota"},
    {"MS", "Mississippi"},   {"MO", "Missouri"},      {"MT", "Montana"},
    {"NE", "Nebraska"},      {"NV", "Nevada"},        {"NH", "New Hampshire"},
    {"NJ", "New Jersey"},    {"NM", "New Mexico"},    {"NY", "New York"},
    {"NC", "North Carolina"},{"ND", "North Dakota"},  {"OH", "Ohio"},
    {"OK", "Oklahoma"},      {"OR", "Oregon"},        {"PA", "Pennsylvania"},
    {"RI", "Rhode Island"},  {"SC", "South Carolina"},{"SD", "South Dakota"},
    {"TN", "Tennessee"},     {"TX", "Texas"},         {"UT", "Utah"},
    {"VT", "Vermont"},       {"VA", "Virginia"},      {"WA", "Washington"},
    {"WV", "West Virginia"}, {"WI", "Wisconsin"},     {"WY", "Wyoming"},
}};

}  // namespace

std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::MafDevelopment: return "MAF Development";
    case Phase::SelfResponse: return "Self-Response";
    case Phase::Nrfu: return "NRFU";
    case Phase::DataProcessing: return "Data Processing";
    case Phase::GroupQuarters: return "Group Quarters";
  }
  return "?";
}

std::string_view phase_abbrev(Phase p) {
  switch (p) {
    case Phase::MafDevelopment: return "maf";
    case Phase::SelfResponse: return "sr";
    case Phase::Nrfu: return "nrfu";
    case Phase::DataProcessing: return "dp";
    case Phase::GroupQuarters: return "gq";
  }
  return "?";
}

std::span<const PsDef, kPsCount> catalog() { return kCatalog; }

const PsDef& ps_def(int ps_id) {
  if (ps_id < 1 || ps_id > kPsCount)
    throw DomainError("unknown process statistic id: " + std::to_string(ps_id));
  return kCatalog[ps_id - 1];
}

int difference_index(int ps_id) {
  auto it = std::find(kDifferencePsIds.begin(), kDifferencePsIds.end(), ps_id);
  return it == kDifferencePsIds.end()
             ? -1
             : static_cast<int>(it - kDifferencePsIds.begin());
}

std::span<const Entity, kEntityCount> entities() { return kEntities; }

int canonical_index(std::string_view code) {
  for (int i = 0; i < kEntityCount; ++i)
    if (kEntities[i].code == code) return i;
  throw DomainError("unknown entity code: \"" + std::string(code) + "\"");
}

std::string_view entity_code(int index) { return kEntities.at(index).code; }
std::string_view entity_name(int index) { return kEntities.at(index).name; }

std::string VariantConfig::name() const {
  std::string n = include_us_in_quintiles ? "us_in" : "us_out";
  n += zero_negative_weights ? "+zeroing" : "+no_zeroing";
  if (tie_break == TieBreak::ByReverseCanonical) n += "+rev_ties";
  if (us_sps == UsSpsMode::DeriveWhereAvailable) n += "+us_sps";
  return n;
}

void VariantConfig::check_valid() const {
  int sum = 0;
  for (int b : quintile_n51_scheme) {
    if (b < 0) throw DomainError("quintile scheme has a negative bucket");
    sum += b;
  }
  if (sum != kStateCount)
    throw DomainError("51-entity quintile scheme sums to " + std::to_string(sum) +
                      ", expected 51");
}

bool ErrataRegistry::covers(std::string_view check_id, int ps_id, int entity) const {
  return find(check_id, ps_id, entity) != nullptr;
}

const Erratum* ErrataRegistry::find(std::string_view check_id, int ps_id,
                                    int entity) const {
  for (const auto& e : entries)
    if (e.check_id == check_id && e.ps_id == ps_id && e.entity == entity) return &e;
  return nullptr;
}

}  // namespace riskdex
