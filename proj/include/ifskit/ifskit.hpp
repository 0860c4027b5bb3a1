#pragma once

// Umbrella header: pulls in the whole library.

#include "ifskit/csv.hpp"
#include "ifskit/diagnostics.hpp"
#include "ifskit/ergodic.hpp"
#include "ifskit/interval.hpp"
#include "ifskit/measure.hpp"
#include "ifskit/model.hpp"
#include "ifskit/numeric.hpp"
#include "ifskit/piecewise_linear.hpp"
#include "ifskit/presets.hpp"
#include "ifskit/reflected_walk.hpp"
#include "ifskit/rng.hpp"
#include "ifskit/serialization.hpp"
#include "ifskit/word.hpp"
