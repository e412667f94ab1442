#pragma once

#include "conesurf/errors.hpp"
#include "conesurf/hkernel.hpp"
#include "conesurf/triangle.hpp"
#include "conesurf/pants.hpp"
#include "conesurf/surface.hpp"
#include "conesurf/curves.hpp"
#include "conesurf/deform.hpp"
#include "conesurf/estimates.hpp"
#include "conesurf/doubling.hpp"
