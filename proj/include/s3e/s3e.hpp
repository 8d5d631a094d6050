// Umbrella header.

#pragma once

#include "s3e/attack_analysis.hpp"
#include "s3e/estimator.hpp"
#include "s3e/lp.hpp"
#include "s3e/matrix_exp.hpp"
#include "s3e/observability.hpp"
#include "s3e/point_estimator.hpp"
#include "s3e/rng.hpp"
#include "s3e/scenario.hpp"
#include "s3e/serialization.hpp"
#include "s3e/set_algebra.hpp"
#include "s3e/sim.hpp"
