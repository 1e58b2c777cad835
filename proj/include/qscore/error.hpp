#pragma once

#include <stdexcept>
#include <string>

namespace qscore {

// Failure classes carried by every qscore::Error. The CLI maps these onto
// exit codes (io/config problems -> 2, data problems -> 1).
enum class Errc {
  DegenerateScale,    // input_min == input_max, the scale has no slope
  DegenerateRanking,  // ranking table whose worst rank is 1
  OutOfRange,         // value outside its documented domain
  NoRankingData,      // cohort needs a rank table that is empty for its year
  EmptyCohort,
  MixedCohort,
  DuplicateYear,
  MissingYear,
  InvalidConfig,
  IoError,
  CorruptStore,
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::DegenerateScale: return "degenerate-scale";
    case Errc::DegenerateRanking: return "degenerate-ranking";
    case Errc::OutOfRange: return "out-of-range";
    case Errc::NoRankingData: return "no-ranking-data";
    case Errc::EmptyCohort: return "empty-cohort";
    case Errc::MixedCohort: return "mixed-cohort";
    case Errc::DuplicateYear: return "duplicate-year";
    case Errc::MissingYear: return "missing-year";
    case Errc::InvalidConfig: return "invalid-config";
    case Errc::IoError: return "io-error";
    case Errc::CorruptStore: return "corrupt-store";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qscore
