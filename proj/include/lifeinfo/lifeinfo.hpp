#pragma once

// Umbrella header for the lifeinfo library.

#include "lifeinfo/bivariate_model.hpp"
#include "lifeinfo/copula.hpp"
#include "lifeinfo/copula_mi.hpp"
#include "lifeinfo/dynamic_entropy.hpp"
#include "lifeinfo/dynamic_mi.hpp"
#include "lifeinfo/errors.hpp"
#include "lifeinfo/mc_oracle.hpp"
#include "lifeinfo/models.hpp"
#include "lifeinfo/order_stats.hpp"
#include "lifeinfo/quadrature.hpp"
#include "lifeinfo/regions.hpp"
#include "lifeinfo/special.hpp"
#include "lifeinfo/tte.hpp"
#include "lifeinfo/types.hpp"
#include "lifeinfo/univariate.hpp"
