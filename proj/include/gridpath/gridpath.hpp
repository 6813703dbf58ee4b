#pragma once

#include "gridpath/bench.hpp"
#include "gridpath/cost.hpp"
#include "gridpath/dataset.hpp"
#include "gridpath/error.hpp"
#include "gridpath/grid.hpp"
#include "gridpath/heuristics.hpp"
#include "gridpath/hmap_io.hpp"
#include "gridpath/json_io.hpp"
#include "gridpath/oracle.hpp"
#include "gridpath/search.hpp"
