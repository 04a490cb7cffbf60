#pragma once

#include "kout/constants.hpp"
#include "kout/decompose.hpp"
#include "kout/digraph.hpp"
#include "kout/distance.hpp"
#include "kout/error.hpp"
#include "kout/harness.hpp"
#include "kout/io.hpp"
#include "kout/oracle.hpp"
#include "kout/outside.hpp"
#include "kout/rng.hpp"
#include "kout/stats.hpp"
#include "kout/surjection.hpp"
