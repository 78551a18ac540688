#pragma once

#include "qent/catalog.hpp"
#include "qent/certifier.hpp"
#include "qent/composite_space.hpp"
#include "qent/density_matrix.hpp"
#include "qent/generators.hpp"
#include "qent/io.hpp"
#include "qent/lambda_sim.hpp"
#include "qent/measurement.hpp"
#include "qent/solver.hpp"
#include "qent/state_vector.hpp"
