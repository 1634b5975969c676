#pragma once

/// \file nikhp.hpp
/// Umbrella header: mixed-type Hermite-Pade approximation on Nikishin
/// systems, exact (GMP rational) and high-precision (MPFR) backends, and the
/// discrete cubic string reduction.

#include "nikhp/analysis.hpp"
#include "nikhp/cubic_string.hpp"
#include "nikhp/hermite_pade.hpp"
#include "nikhp/io.hpp"
#include "nikhp/measures.hpp"
#include "nikhp/nikishin.hpp"
#include "nikhp/svg.hpp"
