#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qscore/error.hpp"
#include "qscore/records.hpp"
#include "qscore/scoring.hpp"
#include "qscore/text.hpp"

namespace qscore {

struct ContextConfig {
  // Use the most recent earlier rank year when the cohort year has no rows.
  bool rank_year_fallback = true;
  UnivScope univ_scope = UnivScope::CountryThenWorld;
};

namespace detail {

// Exact year match wins; otherwise the most recent earlier year, when allowed.
inline std::optional<int> select_rank_year(const std::vector<int>& years,
                                           int cohort_year, bool fallback) {
  std::optional<int> best;
  for (int y : years) {
    if (y == cohort_year) return y;
    if (fallback && y < cohort_year && (!best || y > *best)) best = y;
  }
  return best;
}

inline std::optional<int> map_rank_max(const std::map<std::string, int>& m) {
  std::optional<int> out;
  for (const auto& [name, rank] : m) {
    if (!out || rank > *out) out = rank;
  }
  return out;
}

}  // namespace detail

// Assembles the rank maps and package bounds for one cohort year. Rank rows
// are filtered to the selected rank year per table; package bounds cover the
// SOFJ students among the records given (pass the records being scored).
inline RankingContext build_context(
    const std::vector<StudentRecord>& students,
    const std::vector<UniversityRankEntry>& univ_ranks,
    const std::vector<CompanyRankEntry>& comp_ranks, int cohort_year,
    const ContextConfig& config = {}) {
  RankingContext ctx;
  ctx.year = cohort_year;
  ctx.univ_scope = config.univ_scope;

  bool any_student = false;
  bool has_sphe = false;
  bool has_sofj = false;
  for (const StudentRecord& s : students) {
    if (s.eyear != cohort_year) continue;
    any_student = true;
    switch (academic_category(s)) {
      case AcademicCategory::SPHE:
        has_sphe = true;
        break;
      case AcademicCategory::SOFJ:
        has_sofj = true;
        if (!ctx.package_min || s.package < *ctx.package_min) {
          ctx.package_min = s.package;
        }
        if (!ctx.package_max || s.package > *ctx.package_max) {
          ctx.package_max = s.package;
        }
        break;
      case AcademicCategory::SWNDA:
        break;
    }
  }
  if (!any_student) {
    throw Error(Errc::EmptyCohort,
                "no students with eyear " + std::to_string(cohort_year));
  }

  auto build_univ_map = [&](const std::string& scope) {
    std::vector<int> years;
    for (const UniversityRankEntry& e : univ_ranks) {
      if (e.scope == scope) years.push_back(e.uryear);
    }
    std::map<std::string, int> map;
    const std::optional<int> year = detail::select_rank_year(
        years, cohort_year, config.rank_year_fallback);
    if (year) {
      for (const UniversityRankEntry& e : univ_ranks) {
        if (e.scope == scope && e.uryear == *year) {
          map.emplace(normalize_name(e.univ_name), e.univ_rank);
        }
      }
    }
    return map;
  };
  ctx.university_ranks_country = build_univ_map("country");
  ctx.university_ranks_world = build_univ_map("world");
  ctx.rank_max_univ_country = detail::map_rank_max(ctx.university_ranks_country);
  ctx.rank_max_univ_world = detail::map_rank_max(ctx.university_ranks_world);

  {
    std::vector<int> years;
    for (const CompanyRankEntry& e : comp_ranks) years.push_back(e.cryear);
    const std::optional<int> year = detail::select_rank_year(
        years, cohort_year, config.rank_year_fallback);
    if (year) {
      for (const CompanyRankEntry& e : comp_ranks) {
        if (e.cryear == *year) {
          ctx.company_ranks.emplace(normalize_name(e.comp_name), e.comp_rank);
        }
      }
    }
    ctx.industry_rank_max = detail::map_rank_max(ctx.company_ranks);
  }

  if (has_sphe) {
    const bool country_usable = ctx.univ_scope != UnivScope::WorldOnly &&
                                !ctx.university_ranks_country.empty();
    const bool world_usable = ctx.univ_scope != UnivScope::CountryOnly &&
                              !ctx.university_ranks_world.empty();
    if (!country_usable && !world_usable) {
      throw Error(Errc::NoRankingData,
                  "cohort " + std::to_string(cohort_year) +
                      " has university-bound students but no university "
                      "ranking rows apply");
    }
  }
  if (has_sofj && ctx.company_ranks.empty()) {
    throw Error(Errc::NoRankingData,
                "cohort " + std::to_string(cohort_year) +
                    " has placed students but no company ranking rows apply");
  }
  return ctx;
}

}  // namespace qscore
