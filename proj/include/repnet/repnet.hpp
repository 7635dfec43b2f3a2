#pragma once

#include "repnet/errors.hpp"
#include "repnet/types.hpp"
#include "repnet/validate.hpp"
#include "repnet/spec_io.hpp"
#include "repnet/reputation.hpp"
#include "repnet/dynamics.hpp"
#include "repnet/learning.hpp"
#include "repnet/planner.hpp"
#include "repnet/oracle.hpp"
#include "repnet/rng.hpp"
#include "repnet/generator.hpp"
#include "repnet/simulator.hpp"
