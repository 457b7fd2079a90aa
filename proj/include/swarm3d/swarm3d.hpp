// Umbrella header.
#pragma once

#include "geom3.hpp"
#include "groups.hpp"
#include "detect.hpp"
#include "orbits.hpp"
#include "embeddings.hpp"
#include "frames.hpp"
#include "formation.hpp"
#include "shapes.hpp"
#include "sim.hpp"
#include "io.hpp"
