#ifndef NAPPROX_NAPPROX_HPP
#define NAPPROX_NAPPROX_HPP

#include "napprox/ball.hpp"
#include "napprox/errors.hpp"
#include "napprox/field.hpp"
#include "napprox/intlinalg.hpp"
#include "napprox/io.hpp"
#include "napprox/lattice.hpp"
#include "napprox/orbits.hpp"
#include "napprox/poly.hpp"
#include "napprox/rational.hpp"
#include "napprox/units.hpp"

#endif
