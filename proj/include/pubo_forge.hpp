#pragma once

#include "pubo_forge/error.hpp"
#include "pubo_forge/polynomial.hpp"
#include "pubo_forge/indices.hpp"
#include "pubo_forge/pubo_io.hpp"
#include "pubo_forge/precision.hpp"
#include "pubo_forge/ising.hpp"
#include "pubo_forge/brute_force.hpp"
#include "pubo_forge/ancilla.hpp"
#include "pubo_forge/gadgets.hpp"
#include "pubo_forge/plan.hpp"
#include "pubo_forge/qubo_io.hpp"
#include "pubo_forge/set_cover.hpp"
#include "pubo_forge/ancilla_min.hpp"
#include "pubo_forge/precision_min.hpp"
#include "pubo_forge/wmaxsat.hpp"
#include "pubo_forge/quartic.hpp"
#include "pubo_forge/verify.hpp"
#include "pubo_forge/bench.hpp"
#include "pubo_forge/compile.hpp"
