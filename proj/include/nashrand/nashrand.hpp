#pragma once

#include "nashrand/equilibria.hpp"
#include "nashrand/error.hpp"
#include "nashrand/exact.hpp"
#include "nashrand/families.hpp"
#include "nashrand/game.hpp"
#include "nashrand/json_io.hpp"
#include "nashrand/permutation.hpp"
#include "nashrand/recurrence.hpp"
#include "nashrand/sampler.hpp"
#include "nashrand/strategy.hpp"
