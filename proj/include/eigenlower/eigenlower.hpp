#pragma once

#include "eigenlower/bounds.hpp"
#include "eigenlower/bump.hpp"
#include "eigenlower/error.hpp"
#include "eigenlower/inequalities.hpp"
#include "eigenlower/numerics.hpp"
#include "eigenlower/parallel.hpp"
#include "eigenlower/rayleigh.hpp"
#include "eigenlower/report.hpp"
#include "eigenlower/spectral_mesh.hpp"
#include "eigenlower/surfaces.hpp"
#include "eigenlower/tube.hpp"
#include "eigenlower/verify.hpp"
