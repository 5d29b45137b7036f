#pragma once

// Umbrella header for the numerical library (the CLI lives under transmin/cli/).

#include "transmin/ambient.hpp"
#include "transmin/catalog.hpp"
#include "transmin/curvature.hpp"
#include "transmin/errors.hpp"
#include "transmin/jets.hpp"
#include "transmin/ode.hpp"
#include "transmin/pde.hpp"
#include "transmin/profile.hpp"
#include "transmin/quadrature.hpp"
#include "transmin/random.hpp"
#include "transmin/surface.hpp"
#include "transmin/sweep.hpp"
