#pragma once

#include "kthprice/combinatorics.hpp"
#include "kthprice/distributions.hpp"
#include "kthprice/equilibrium.hpp"
#include "kthprice/polynomial.hpp"
#include "kthprice/quadrature.hpp"
#include "kthprice/random.hpp"
#include "kthprice/rational.hpp"
#include "kthprice/verification.hpp"
