#pragma once

// Umbrella header, pulling in the whole library.

#include "drakelim/counting_stats.hpp"
#include "drakelim/drake_model.hpp"
#include "drakelim/histogram.hpp"
#include "drakelim/math.hpp"
#include "drakelim/mc_engine.hpp"
#include "drakelim/priors.hpp"
#include "drakelim/reporting.hpp"
#include "drakelim/rng.hpp"
#include "drakelim/scenario_io.hpp"
#include "drakelim/version.hpp"
