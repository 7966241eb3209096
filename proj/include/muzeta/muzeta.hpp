// muzeta.hpp — umbrella header.

#pragma once

#include "muzeta/annulus.hpp"
#include "muzeta/csv.hpp"
#include "muzeta/errors.hpp"
#include "muzeta/figures.hpp"
#include "muzeta/mobius.hpp"
#include "muzeta/ramanujan.hpp"
#include "muzeta/special.hpp"
#include "muzeta/summation.hpp"
#include "muzeta/zeros.hpp"
