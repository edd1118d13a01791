#pragma once

#include "sectional/curvature_profile.hpp"
#include "sectional/distance_matrix.hpp"
#include "sectional/embeddings.hpp"
#include "sectional/error.hpp"
#include "sectional/generators.hpp"
#include "sectional/graph.hpp"
#include "sectional/graph_build.hpp"
#include "sectional/io.hpp"
#include "sectional/metric_core.hpp"
#include "sectional/parallel.hpp"
#include "sectional/point_cloud.hpp"
#include "sectional/transport.hpp"
