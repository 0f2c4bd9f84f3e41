#pragma once

#include "uamlanes/commands.hpp"
#include "uamlanes/config.hpp"
#include "uamlanes/corridor.hpp"
#include "uamlanes/dispatch.hpp"
#include "uamlanes/evaluator.hpp"
#include "uamlanes/io.hpp"
#include "uamlanes/pipeline.hpp"
#include "uamlanes/policies.hpp"
#include "uamlanes/solver.hpp"
#include "uamlanes/sweep.hpp"
#include "uamlanes/trips.hpp"
