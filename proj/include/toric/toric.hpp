#pragma once

#include "toric/rational.hpp"
#include "toric/polytope.hpp"
#include "toric/divided_difference.hpp"
#include "toric/pa_convex.hpp"
#include "toric/exp_integrate.hpp"
#include "toric/dh_metric.hpp"
#include "toric/na_functionals.hpp"
#include "toric/optimizer.hpp"
#include "toric/filtration.hpp"
#include "toric/builtin.hpp"
