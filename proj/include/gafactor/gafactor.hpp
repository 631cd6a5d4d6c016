#pragma once

// Umbrella header for the gafactor toolkit.

#include "gafactor/dataset.hpp"
#include "gafactor/digit_distribution.hpp"
#include "gafactor/errors.hpp"
#include "gafactor/ga_core.hpp"
#include "gafactor/harness.hpp"
#include "gafactor/numtheory.hpp"
#include "gafactor/rng.hpp"
#include "gafactor/sieve_method.hpp"
#include "gafactor/simple_ga.hpp"
#include "gafactor/u128.hpp"
