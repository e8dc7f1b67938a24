#pragma once

#include "charfactor/error.hpp"
#include "charfactor/numeric.hpp"
#include "charfactor/polynomial.hpp"
#include "charfactor/multipoly.hpp"
#include "charfactor/linalg.hpp"
#include "charfactor/poset.hpp"
#include "charfactor/incidence.hpp"
#include "charfactor/arrangement.hpp"
#include "charfactor/signed_graph.hpp"
#include "charfactor/point_counting.hpp"
#include "charfactor/free_arrangements.hpp"
#include "charfactor/lattice.hpp"
#include "charfactor/lattice_factorization.hpp"
#include "charfactor/json_io.hpp"
