#pragma once

// Umbrella header: the whole library in one include.

#include "dhsparse/cli.hpp"
#include "dhsparse/decremental.hpp"
#include "dhsparse/exact_sum.hpp"
#include "dhsparse/fully_dynamic.hpp"
#include "dhsparse/generate.hpp"
#include "dhsparse/hypergraph.hpp"
#include "dhsparse/io.hpp"
#include "dhsparse/pair_index.hpp"
#include "dhsparse/rng.hpp"
#include "dhsparse/scheduler.hpp"
#include "dhsparse/static_sparsifier.hpp"
#include "dhsparse/verify.hpp"
