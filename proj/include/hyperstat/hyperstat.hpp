#pragma once

#include "hyperstat/core/axis.hpp"
#include "hyperstat/core/calculus.hpp"
#include "hyperstat/core/errors.hpp"
#include "hyperstat/core/fields.hpp"
#include "hyperstat/core/grid.hpp"
#include "hyperstat/core/interpolate.hpp"
#include "hyperstat/core/io.hpp"
#include "hyperstat/density/bandwidth.hpp"
#include "hyperstat/density/estimate.hpp"
#include "hyperstat/density/kde.hpp"
#include "hyperstat/density/rates.hpp"
#include "hyperstat/ensemble/ensemble.hpp"
#include "hyperstat/ensemble/flux.hpp"
#include "hyperstat/ensemble/io.hpp"
#include "hyperstat/ensemble/param_law.hpp"
#include "hyperstat/ensemble/quantile.hpp"
#include "hyperstat/evolve/cdf.hpp"
#include "hyperstat/evolve/linear.hpp"
#include "hyperstat/evolve/nonlocal.hpp"
#include "hyperstat/harness/config.hpp"
#include "hyperstat/harness/experiment.hpp"
#include "hyperstat/harness/metrics.hpp"
#include "hyperstat/multipoint/counterexample.hpp"
#include "hyperstat/multipoint/diagonal.hpp"
#include "hyperstat/multipoint/npoint.hpp"
#include "hyperstat/scenarios/catalog.hpp"
#include "hyperstat/scenarios/scenario.hpp"
#include "hyperstat/transport/advection.hpp"
#include "hyperstat/transport/godunov.hpp"
