#pragma once

// Umbrella header: the full library in dependency order.

#include "nielsen/numeric.hpp"
#include "nielsen/matrix.hpp"
#include "nielsen/linalg.hpp"
#include "nielsen/hnf.hpp"
#include "nielsen/smith.hpp"
#include "nielsen/lattice.hpp"
#include "nielsen/polynomial.hpp"
#include "nielsen/sturm.hpp"
#include "nielsen/tower.hpp"
#include "nielsen/netness.hpp"
#include "nielsen/morphism.hpp"
#include "nielsen/formulas.hpp"
#include "nielsen/oracle.hpp"
#include "nielsen/problem.hpp"
#include "nielsen/report.hpp"
#include "nielsen/cli.hpp"
