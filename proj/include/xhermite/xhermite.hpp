#pragma once

#include "xhermite/errors.hpp"
#include "xhermite/exact_poly.hpp"
#include "xhermite/rat_fun.hpp"
#include "xhermite/partition.hpp"
#include "xhermite/family.hpp"
#include "xhermite/operators.hpp"
#include "xhermite/quadrature.hpp"
