#pragma once

#include "hhgeom/bodies.hpp"
#include "hhgeom/functional.hpp"
#include "hhgeom/io.hpp"
#include "hhgeom/marginals.hpp"
#include "hhgeom/polytope.hpp"
#include "hhgeom/quadrature.hpp"
#include "hhgeom/report.hpp"
#include "hhgeom/sampling.hpp"
#include "hhgeom/symmetrize.hpp"
#include "hhgeom/triangulation.hpp"
#include "hhgeom/verify.hpp"
