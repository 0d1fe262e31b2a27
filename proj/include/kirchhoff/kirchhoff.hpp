#pragma once

// Umbrella header for the solver library (everything except the CLI layer).

#include "kirchhoff/analysis.hpp"
#include "kirchhoff/config.hpp"
#include "kirchhoff/errors.hpp"
#include "kirchhoff/expression.hpp"
#include "kirchhoff/green_kernel.hpp"
#include "kirchhoff/grid.hpp"
#include "kirchhoff/oracle.hpp"
#include "kirchhoff/picard.hpp"
#include "kirchhoff/problem.hpp"
#include "kirchhoff/report.hpp"
