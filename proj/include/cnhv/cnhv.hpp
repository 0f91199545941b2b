#pragma once

#include "cnhv/departure.hpp"
#include "cnhv/errors.hpp"
#include "cnhv/logic.hpp"
#include "cnhv/logic_io.hpp"
#include "cnhv/ontic.hpp"
#include "cnhv/parallel.hpp"
#include "cnhv/quadrature.hpp"
#include "cnhv/quantum.hpp"
#include "cnhv/rng.hpp"
#include "cnhv/vec3.hpp"
