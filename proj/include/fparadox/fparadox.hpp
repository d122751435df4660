#pragma once

#include "fparadox/centrality.hpp"
#include "fparadox/conditions.hpp"
#include "fparadox/errors.hpp"
#include "fparadox/exact.hpp"
#include "fparadox/explore.hpp"
#include "fparadox/generators.hpp"
#include "fparadox/graph.hpp"
#include "fparadox/io.hpp"
#include "fparadox/paradox.hpp"
#include "fparadox/prng.hpp"
#include "fparadox/spectral.hpp"
