#pragma once

// Umbrella header: symbols, kernel calculus, density analysis, numeric
// evaluation, the expression language and sequence I/O.

#include "atom.hpp"
#include "density.hpp"
#include "eval.hpp"
#include "kernel.hpp"
#include "parser.hpp"
#include "seq_io.hpp"
#include "sequence.hpp"
#include "symbol.hpp"
#include "verdict.hpp"
