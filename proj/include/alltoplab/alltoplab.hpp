#pragma once

// Umbrella header: exact verification of planar and Alltop functions over
// F_{p^r}, the MUB and signal-set constructions they induce, and the
// supporting field/polynomial/cyclotomic machinery.

#include "alltoplab/analysis.hpp"
#include "alltoplab/cyclotomic.hpp"
#include "alltoplab/errors.hpp"
#include "alltoplab/families.hpp"
#include "alltoplab/field.hpp"
#include "alltoplab/io.hpp"
#include "alltoplab/mub.hpp"
#include "alltoplab/parallel.hpp"
#include "alltoplab/poly.hpp"
#include "alltoplab/search.hpp"
#include "alltoplab/signal.hpp"
