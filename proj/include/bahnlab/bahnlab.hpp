#pragma once

#include "bahnlab/algos.hpp"
#include "bahnlab/analysis.hpp"
#include "bahnlab/core.hpp"
#include "bahnlab/experiment.hpp"
#include "bahnlab/generate.hpp"
#include "bahnlab/io.hpp"
#include "bahnlab/offline.hpp"
#include "bahnlab/parallel.hpp"
#include "bahnlab/patterns.hpp"
#include "bahnlab/predictors.hpp"
#include "bahnlab/rational.hpp"
#include "bahnlab/rng.hpp"
#include "bahnlab/tight.hpp"
