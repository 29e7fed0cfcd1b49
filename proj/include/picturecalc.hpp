#pragma once

// Umbrella header: every public component of the library.

#include "picturecalc/atoms.hpp"
#include "picturecalc/canonical.hpp"
#include "picturecalc/coeff.hpp"
#include "picturecalc/diagram.hpp"
#include "picturecalc/embed.hpp"
#include "picturecalc/enumerate.hpp"
#include "picturecalc/error.hpp"
#include "picturecalc/factorize.hpp"
#include "picturecalc/geometry.hpp"
#include "picturecalc/graph_product.hpp"
#include "picturecalc/io.hpp"
#include "picturecalc/moves.hpp"
#include "picturecalc/presentation.hpp"
#include "picturecalc/qmgraph.hpp"
#include "picturecalc/reduce.hpp"
#include "picturecalc/sampling.hpp"
#include "picturecalc/thompson.hpp"
