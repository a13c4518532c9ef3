#pragma once

#include "evograph/config.hpp"
#include "evograph/engine.hpp"
#include "evograph/generate.hpp"
#include "evograph/graph.hpp"
#include "evograph/io.hpp"
#include "evograph/metrics.hpp"
#include "evograph/rng.hpp"
#include "evograph/scoring.hpp"
