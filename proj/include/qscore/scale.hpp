#pragma once

#include <string>

#include "qscore/error.hpp"

namespace qscore {

// Two-anchor linear map: input_min -> scaled_min and input_max -> scaled_max.
// input_min may exceed input_max (a reversed scale), which is how rank scales
// are built: the worst rank anchors the low end of the output.
struct ScaleSpec {
  double input_min = 0.0;
  double input_max = 0.0;
  double scaled_min = 0.0;
  double scaled_max = 0.0;
};

inline double linear_scale(double input, const ScaleSpec& spec) {
  if (spec.input_min == spec.input_max) {
    throw Error(Errc::DegenerateScale,
                "linear_scale: input_min == input_max (" +
                    std::to_string(spec.input_min) + "), scale has no slope");
  }
  if (!(spec.scaled_min < spec.scaled_max)) {
    throw Error(Errc::DegenerateScale,
                "linear_scale: scaled_min must be strictly below scaled_max");
  }
  // Anchor inputs return their anchor values untouched so endpoint scores
  // are exact, not merely within rounding of the rate/offset arithmetic.
  if (input == spec.input_min) return spec.scaled_min;
  if (input == spec.input_max) return spec.scaled_max;
  const double rate =
      (spec.scaled_max - spec.scaled_min) / (spec.input_max - spec.input_min);
  const double offset = spec.scaled_min - spec.input_min * rate;
  return input * rate + offset;
}

}  // namespace qscore
