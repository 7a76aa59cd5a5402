#pragma once

// Umbrella header for the whole library.

#include "structeig/error.hpp"
#include "structeig/dense.hpp"
#include "structeig/eigensolution.hpp"
#include "structeig/linalg.hpp"
#include "structeig/polynomial.hpp"
#include "structeig/structured.hpp"
#include "structeig/analytic.hpp"
#include "structeig/reference.hpp"
#include "structeig/identities.hpp"
#include "structeig/io.hpp"
