#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qscore/error.hpp"
#include "qscore/scoring.hpp"

namespace qscore {

// Score band a student falls into. Ordered worst-to-best so the enum value
// doubles as an array index and honors AboveAverage > Average > BelowAverage.
enum class QsCategory { BelowAverage = 0, Average = 1, AboveAverage = 2 };

inline constexpr std::array<QsCategory, 3> kQsCategories = {
    QsCategory::BelowAverage, QsCategory::Average, QsCategory::AboveAverage};

inline const char* to_string(QsCategory c) {
  switch (c) {
    case QsCategory::BelowAverage: return "BelowAverage";
    case QsCategory::Average: return "Average";
    case QsCategory::AboveAverage: return "AboveAverage";
  }
  return "?";
}

inline const char* display_name(QsCategory c) {
  switch (c) {
    case QsCategory::BelowAverage: return "Below Average";
    case QsCategory::Average: return "Average";
    case QsCategory::AboveAverage: return "Above Average";
  }
  return "?";
}

// Band cutoffs. Absolute (not cohort-relative) so categorization is
// year-independent and trend lines stay comparable across years.
struct BandConfig {
  double lower_threshold = 4.0;
  double upper_threshold = 7.0;

  void validate() const {
    if (!(0.0 <= lower_threshold && lower_threshold < upper_threshold &&
          upper_threshold <= 10.0)) {
      throw Error(Errc::InvalidConfig,
                  "band thresholds must satisfy 0 <= lower < upper <= 10");
    }
  }
};

// Both thresholds are inclusive on the Average side.
inline QsCategory qs_category(double qs, const BandConfig& bands = {}) {
  if (qs < bands.lower_threshold) return QsCategory::BelowAverage;
  if (qs <= bands.upper_threshold) return QsCategory::Average;
  return QsCategory::AboveAverage;
}

struct CategoryStats {
  std::size_t count = 0;
  double share = 0.0;
  std::optional<double> mean_qs;  // absent when count == 0, never reported as 0
};

struct CohortSummary {
  int cohort_year = 0;
  std::array<CategoryStats, 3> categories{};  // indexed by QsCategory
  double overall_mean_qs = 0.0;
  std::size_t total_students = 0;

  const CategoryStats& stats(QsCategory c) const {
    return categories[static_cast<std::size_t>(c)];
  }
};

inline CohortSummary summarize_cohort(const std::vector<QualityScore>& scores,
                                      const BandConfig& bands = {}) {
  bands.validate();
  if (scores.empty()) {
    throw Error(Errc::EmptyCohort, "summarize_cohort: no scores given");
  }
  CohortSummary out;
  out.cohort_year = scores.front().cohort_year;
  std::array<double, 3> sums{};
  double total_sum = 0.0;
  for (const QualityScore& s : scores) {
    if (s.cohort_year != out.cohort_year) {
      throw Error(Errc::MixedCohort,
                  "summarize_cohort: scores span cohort years " +
                      std::to_string(out.cohort_year) + " and " +
                      std::to_string(s.cohort_year));
    }
    const auto idx = static_cast<std::size_t>(qs_category(s.qs_total, bands));
    out.categories[idx].count += 1;
    sums[idx] += s.qs_total;
    total_sum += s.qs_total;
  }
  out.total_students = scores.size();
  const auto total = static_cast<double>(out.total_students);
  for (std::size_t i = 0; i < out.categories.size(); ++i) {
    CategoryStats& cat = out.categories[i];
    cat.share = static_cast<double>(cat.count) / total;
    if (cat.count > 0) cat.mean_qs = sums[i] / static_cast<double>(cat.count);
  }
  out.overall_mean_qs = total_sum / total;
  return out;
}

// Cohort summaries ordered by ascending year, the input to line charts.
// Absent category means stay absent so charts render gaps, not zeros.
class TrendSeries {
 public:
  explicit TrendSeries(std::vector<CohortSummary> summaries)
      : summaries_(std::move(summaries)) {
    std::sort(summaries_.begin(), summaries_.end(),
              [](const CohortSummary& a, const CohortSummary& b) {
                return a.cohort_year < b.cohort_year;
              });
    for (std::size_t i = 1; i < summaries_.size(); ++i) {
      if (summaries_[i].cohort_year == summaries_[i - 1].cohort_year) {
        throw Error(Errc::DuplicateYear,
                    "duplicate cohort year " +
                        std::to_string(summaries_[i].cohort_year) +
                        " in trend input");
      }
    }
  }

  const std::vector<CohortSummary>& summaries() const { return summaries_; }
  std::size_t size() const { return summaries_.size(); }

  std::vector<int> years() const {
    std::vector<int> out;
    out.reserve(summaries_.size());
    for (const CohortSummary& s : summaries_) out.push_back(s.cohort_year);
    return out;
  }

  std::vector<std::optional<double>> category_means(QsCategory c) const {
    std::vector<std::optional<double>> out;
    out.reserve(summaries_.size());
    for (const CohortSummary& s : summaries_) out.push_back(s.stats(c).mean_qs);
    return out;
  }

  std::vector<double> overall_means() const {
    std::vector<double> out;
    out.reserve(summaries_.size());
    for (const CohortSummary& s : summaries_) out.push_back(s.overall_mean_qs);
    return out;
  }

 private:
  std::vector<CohortSummary> summaries_;
};

inline TrendSeries trend(std::vector<CohortSummary> summaries) {
  return TrendSeries(std::move(summaries));
}

}  // namespace qscore
