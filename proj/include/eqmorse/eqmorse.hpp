#pragma once

#include "eqmorse/errors.hpp"
#include "eqmorse/numeric.hpp"
#include "eqmorse/weight.hpp"
#include "eqmorse/lattice_chambers.hpp"
#include "eqmorse/character_ring.hpp"
#include "eqmorse/hodge_polynomial.hpp"
#include "eqmorse/fixed_point_model.hpp"
#include "eqmorse/morse_engine.hpp"
#include "eqmorse/hodge_tools.hpp"
#include "eqmorse/cut_quant.hpp"
#include "eqmorse/corpus.hpp"
#include "eqmorse/json_io.hpp"
#include "eqmorse/runner.hpp"
