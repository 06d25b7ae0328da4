#pragma once

#include "qpersist/scalar.hpp"
#include "qpersist/model.hpp"
#include "qpersist/qpolynomial.hpp"
#include "qpersist/power_series.hpp"
#include "qpersist/qspecial.hpp"
#include "qpersist/zigzag.hpp"
#include "qpersist/genfunc.hpp"
#include "qpersist/persistence.hpp"
#include "qpersist/rng.hpp"
#include "qpersist/montecarlo.hpp"
#include "qpersist/quadrature.hpp"
