#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "qscore/error.hpp"
#include "qscore/records.hpp"
#include "qscore/scale.hpp"
#include "qscore/text.hpp"

namespace qscore {

// Transition outcome of a student at course completion.
//   SPHE  - joined a university (postgraduate / research degree)
//   SOFJ  - joined a company within the one-year window
//   SWNDA - neither is known; scored 0 by convention
enum class AcademicCategory { SPHE, SOFJ, SWNDA };

inline const char* to_string(AcademicCategory c) {
  switch (c) {
    case AcademicCategory::SPHE: return "SPHE";
    case AcademicCategory::SOFJ: return "SOFJ";
    case AcademicCategory::SWNDA: return "SWNDA";
  }
  return "?";
}

inline AcademicCategory academic_category_from_string(const std::string& s) {
  if (s == "SPHE") return AcademicCategory::SPHE;
  if (s == "SOFJ") return AcademicCategory::SOFJ;
  if (s == "SWNDA") return AcademicCategory::SWNDA;
  throw Error(Errc::OutOfRange, "unknown academic category '" + s + "'");
}

// Which university rank tables a name is resolved against. The default tries
// the country table first and falls back to the world table.
enum class UnivScope { CountryThenWorld, CountryOnly, WorldOnly };

// Rank lookup tables and cohort-wide bounds for one scoring year.
// Map keys are normalize_name()d; rank_max values are the true maxima of
// their maps and absent exactly when the map is empty.
struct RankingContext {
  int year = 0;
  std::map<std::string, int> university_ranks_country;
  std::map<std::string, int> university_ranks_world;
  std::map<std::string, int> company_ranks;
  std::optional<int> rank_max_univ_country;
  std::optional<int> rank_max_univ_world;
  std::optional<int> industry_rank_max;
  std::optional<double> package_min;  // over the cohort's SOFJ students
  std::optional<double> package_max;
  UnivScope univ_scope = UnivScope::CountryThenWorld;
};

// Per-student result. qs_ir / qs_po are present only for SOFJ, where
// qs_total == qs_ir + qs_po holds exactly.
struct QualityScore {
  std::int64_t student_id = 0;
  int cohort_year = 0;
  AcademicCategory category = AcademicCategory::SWNDA;
  std::optional<double> qs_ir;
  std::optional<double> qs_po;
  double qs_total = 0.0;
};

// Flags decide the category; validation upstream guarantees they are not
// both set.
inline AcademicCategory academic_category(const StudentRecord& record) {
  if (record.univ_f) return AcademicCategory::SPHE;
  if (record.comp_f) return AcademicCategory::SOFJ;
  return AcademicCategory::SWNDA;
}

namespace detail {

inline double rank_score(std::optional<int> rank, int rank_max,
                         double scale_top, const char* what) {
  if (!rank) return 0.0;
  if (rank_max == 1) {
    throw Error(Errc::DegenerateRanking,
                std::string(what) +
                    ": ranking table has a single rank value (rank_max == 1)");
  }
  if (rank_max < 1) {
    throw Error(Errc::OutOfRange, std::string(what) + ": rank_max " +
                                      std::to_string(rank_max) +
                                      " is not a positive rank");
  }
  if (*rank < 1 || *rank > rank_max) {
    throw Error(Errc::OutOfRange, std::string(what) + ": rank " +
                                      std::to_string(*rank) +
                                      " outside [1, " +
                                      std::to_string(rank_max) + "]");
  }
  return linear_scale(static_cast<double>(*rank),
                      ScaleSpec{.input_min = static_cast<double>(rank_max),
                                .input_max = 1.0,
                                .scaled_min = 1.0,
                                .scaled_max = scale_top});
}

inline std::optional<int> find_rank(const std::map<std::string, int>& table,
                                    const std::string& key) {
  auto it = table.find(key);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

}  // namespace detail

// University-rank score on a 1..10 scale; an unranked university scores 0.
inline double score_sphe(std::optional<int> university_rank, int rank_max) {
  return detail::rank_score(university_rank, rank_max, 10.0, "score_sphe");
}

// Company-rank score on a 1..5 scale; an unranked company scores 0.
inline double score_ir(std::optional<int> company_rank, int industry_rank_max) {
  return detail::rank_score(company_rank, industry_rank_max, 5.0, "score_ir");
}

// Package score on a 0..5 scale relative to the cohort's offer range. When
// every observed offer is identical the range carries no ordering
// information and the scale midpoint 2.5 is returned.
inline double score_po(double package, double package_min, double package_max) {
  if (package_min > package_max) {
    throw Error(Errc::OutOfRange, "score_po: package_min > package_max");
  }
  if (package < package_min || package > package_max) {
    throw Error(Errc::OutOfRange,
                "score_po: package " + std::to_string(package) + " outside [" +
                    std::to_string(package_min) + ", " +
                    std::to_string(package_max) + "]");
  }
  if (package_min == package_max) return 2.5;
  return linear_scale(package, ScaleSpec{.input_min = package_min,
                                         .input_max = package_max,
                                         .scaled_min = 0.0,
                                         .scaled_max = 5.0});
}

inline double score_sofj(double qs_ir, double qs_po) { return qs_ir + qs_po; }

// Scores one student against the cohort's ranking context. Pure; errors from
// the component scores are rethrown tagged with the student id.
inline QualityScore score_student(const StudentRecord& record,
                                  const RankingContext& ctx) {
  QualityScore qs;
  qs.student_id = record.id;
  qs.cohort_year = record.eyear;
  qs.category = academic_category(record);
  try {
    switch (qs.category) {
      case AcademicCategory::SWNDA:
        break;  // stays 0 with no components
      case AcademicCategory::SPHE: {
        const std::string name = normalize_name(record.univ);
        std::optional<int> rank;
        int rank_max = 0;
        if (!name.empty()) {
          if (ctx.univ_scope != UnivScope::WorldOnly) {
            rank = detail::find_rank(ctx.university_ranks_country, name);
            if (rank) rank_max = ctx.rank_max_univ_country.value();
          }
          if (!rank && ctx.univ_scope != UnivScope::CountryOnly) {
            rank = detail::find_rank(ctx.university_ranks_world, name);
            if (rank) rank_max = ctx.rank_max_univ_world.value();
          }
        }
        qs.qs_total = rank ? score_sphe(rank, rank_max) : 0.0;
        break;
      }
      case AcademicCategory::SOFJ: {
        const std::string name = normalize_name(record.comp);
        const std::optional<int> rank =
            name.empty() ? std::nullopt
                         : detail::find_rank(ctx.company_ranks, name);
        const double ir =
            rank ? score_ir(rank, ctx.industry_rank_max.value()) : 0.0;
        if (!ctx.package_min || !ctx.package_max) {
          throw Error(Errc::NoRankingData,
                      "context for year " + std::to_string(ctx.year) +
                          " carries no package bounds");
        }
        const double po =
            score_po(record.package, *ctx.package_min, *ctx.package_max);
        qs.qs_ir = ir;
        qs.qs_po = po;
        qs.qs_total = score_sofj(ir, po);
        break;
      }
    }
  } catch (const Error& e) {
    throw Error(e.code(),
                "student " + std::to_string(record.id) + ": " + e.what());
  }
  return qs;
}

}  // namespace qscore
