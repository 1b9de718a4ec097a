#pragma once

// Umbrella header: pulls in the complete pouch-motor simulation library.

#include "pouchsim/actuator.hpp"
#include "pouchsim/cli.hpp"
#include "pouchsim/config.hpp"
#include "pouchsim/errors.hpp"
#include "pouchsim/fluid.hpp"
#include "pouchsim/geometry.hpp"
#include "pouchsim/peltier.hpp"
#include "pouchsim/scenarios.hpp"
#include "pouchsim/thermal.hpp"
#include "pouchsim/timeseries.hpp"
