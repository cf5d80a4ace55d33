#pragma once

#include "hhsharp/counter_rng.hpp"
#include "hhsharp/errors.hpp"
#include "hhsharp/heis_geometry.hpp"
#include "hhsharp/mixed_norm.hpp"
#include "hhsharp/operators.hpp"
#include "hhsharp/profiles.hpp"
#include "hhsharp/quadrature.hpp"
#include "hhsharp/sampling.hpp"
#include "hhsharp/sharp_constants.hpp"
#include "hhsharp/special_functions.hpp"
