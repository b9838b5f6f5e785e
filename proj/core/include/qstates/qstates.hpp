#pragma once

#include "qstates/closed_form.hpp"
#include "qstates/complex.hpp"
#include "qstates/errors.hpp"
#include "qstates/limits.hpp"
#include "qstates/moments.hpp"
#include "qstates/momentum.hpp"
#include "qstates/quadrature.hpp"
#include "qstates/specfun.hpp"
#include "qstates/states.hpp"
