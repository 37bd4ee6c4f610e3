#pragma once

#include "polyloop/error.hpp"
#include "polyloop/graded_series.hpp"
#include "polyloop/simplicial_complex.hpp"
#include "polyloop/homotopy_algebra.hpp"
#include "polyloop/integer_linalg.hpp"
#include "polyloop/decomposition.hpp"
#include "polyloop/homology_oracle.hpp"
#include "polyloop/json_io.hpp"
