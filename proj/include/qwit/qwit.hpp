#pragma once

#include "core.hpp"
#include "io.hpp"
#include "mle.hpp"
#include "montecarlo.hpp"
#include "optim.hpp"
#include "rng.hpp"
#include "state.hpp"
#include "swap.hpp"
#include "witness.hpp"
