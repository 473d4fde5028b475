#pragma once
// Umbrella header: distance-dynamics community detection end to end.

#include "attractor/commands.hpp"
#include "attractor/dynamics.hpp"
#include "attractor/evaluation.hpp"
#include "attractor/generator.hpp"
#include "attractor/graph.hpp"
#include "attractor/io.hpp"
#include "attractor/jaccard.hpp"
#include "attractor/parallel.hpp"
#include "attractor/partition.hpp"
#include "attractor/state.hpp"
