#pragma once

#include "c0lat/error.hpp"
#include "c0lat/tolerances.hpp"
#include "c0lat/linalg.hpp"
#include "c0lat/blaschke.hpp"
#include "c0lat/spectral.hpp"
#include "c0lat/subspace.hpp"
#include "c0lat/lattice.hpp"
#include "c0lat/modelspace.hpp"
#include "c0lat/calculus.hpp"
#include "c0lat/jordan.hpp"
#include "c0lat/sampling.hpp"
#include "c0lat/report.hpp"
#include "c0lat/parallel.hpp"
#include "c0lat/verifiers.hpp"
#include "c0lat/io.hpp"
#include "c0lat/suites.hpp"
