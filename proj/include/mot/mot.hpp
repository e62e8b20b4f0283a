#pragma once

#include "mot/channel.hpp"
#include "mot/errors.hpp"
#include "mot/geometry.hpp"
#include "mot/mot_model.hpp"
#include "mot/numeric.hpp"
#include "mot/rng.hpp"
#include "mot/run_record.hpp"
#include "mot/scenario.hpp"
#include "mot/scenario_io.hpp"
#include "mot/solvers.hpp"
#include "mot/svg_plot.hpp"
