#pragma once

// Umbrella header for the qscore library.

#include "qscore/analytics.hpp"
#include "qscore/charts.hpp"
#include "qscore/context.hpp"
#include "qscore/csv.hpp"
#include "qscore/error.hpp"
#include "qscore/fsutil.hpp"
#include "qscore/io.hpp"
#include "qscore/records.hpp"
#include "qscore/scale.hpp"
#include "qscore/scoring.hpp"
#include "qscore/store.hpp"
#include "qscore/text.hpp"
