#pragma once

#include "primelab/config.hpp"
#include "primelab/count_cache.hpp"
#include "primelab/densities.hpp"
#include "primelab/errors.hpp"
#include "primelab/logint.hpp"
#include "primelab/models.hpp"
#include "primelab/montecarlo.hpp"
#include "primelab/pattern.hpp"
#include "primelab/published.hpp"
#include "primelab/quadrature.hpp"
#include "primelab/random.hpp"
#include "primelab/report.hpp"
#include "primelab/sieve.hpp"
#include "primelab/singular.hpp"
