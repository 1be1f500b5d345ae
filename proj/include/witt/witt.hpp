#pragma once
// Umbrella header.

#include "arith.hpp"
#include "brauer.hpp"
#include "density.hpp"
#include "fields.hpp"
#include "heights.hpp"
#include "int_linalg.hpp"
#include "io.hpp"
#include "local.hpp"
#include "metacyclic.hpp"
#include "primesets.hpp"
#include "residue.hpp"
