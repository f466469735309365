#pragma once

#include "zpe/bulk_pressure.hpp"
#include "zpe/dielectric.hpp"
#include "zpe/errors.hpp"
#include "zpe/numerics.hpp"
#include "zpe/plasmon_film.hpp"
#include "zpe/plate_forces.hpp"
#include "zpe/result.hpp"
#include "zpe/units.hpp"
