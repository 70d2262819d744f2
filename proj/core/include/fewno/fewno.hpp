#pragma once

#include "fewno/discriminant.hpp"
#include "fewno/exact_sign.hpp"
#include "fewno/feasibility.hpp"
#include "fewno/geometry.hpp"
#include "fewno/int_lattice.hpp"
#include "fewno/json_io.hpp"
#include "fewno/oracle.hpp"
#include "fewno/reductions.hpp"
#include "fewno/sparse_polynomial.hpp"
#include "fewno/types.hpp"
