#pragma once

#include "world_set.hpp"
#include "formula.hpp"
#include "frames.hpp"
#include "semantics.hpp"
#include "tiling.hpp"
#include "reduction.hpp"
#include "extraction.hpp"
#include "powerset_symbolic.hpp"
#include "team_logic.hpp"
