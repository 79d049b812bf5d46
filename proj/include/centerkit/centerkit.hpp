#pragma once

#include "centerkit/rational.hpp"
#include "centerkit/scalar.hpp"
#include "centerkit/poly.hpp"
#include "centerkit/errors.hpp"
#include "centerkit/field.hpp"
#include "centerkit/lienard.hpp"
#include "centerkit/strata.hpp"
#include "centerkit/lyapunov.hpp"
#include "centerkit/flow.hpp"
#include "centerkit/firstintegral.hpp"
