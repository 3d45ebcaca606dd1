#pragma once

// Umbrella header for the whole library.

#include "qpsim/arbiter.hpp"
#include "qpsim/cli.hpp"
#include "qpsim/clockgen.hpp"
#include "qpsim/engine.hpp"
#include "qpsim/oracle.hpp"
#include "qpsim/rng.hpp"
#include "qpsim/sram.hpp"
#include "qpsim/stimulus.hpp"
#include "qpsim/trace.hpp"
#include "qpsim/types.hpp"
#include "qpsim/vcd.hpp"
#include "qpsim/verify.hpp"
