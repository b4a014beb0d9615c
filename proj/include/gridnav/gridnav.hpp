#pragma once
// Convenience umbrella: the whole navigation stack in one include.

#include "gridnav/angles.hpp"
#include "gridnav/avoidance.hpp"
#include "gridnav/control.hpp"
#include "gridnav/errors.hpp"
#include "gridnav/map.hpp"
#include "gridnav/obstacles.hpp"
#include "gridnav/pathfind.hpp"
#include "gridnav/render.hpp"
#include "gridnav/rng.hpp"
#include "gridnav/robot_model.hpp"
#include "gridnav/scenario.hpp"
#include "gridnav/sim.hpp"
#include "gridnav/tour.hpp"
#include "gridnav/trace.hpp"
