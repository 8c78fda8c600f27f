#pragma once

#include "collider/analysis.hpp"
#include "collider/bignat.hpp"
#include "collider/collisions.hpp"
#include "collider/constructor.hpp"
#include "collider/digits.hpp"
#include "collider/distribution.hpp"
#include "collider/errors.hpp"
#include "collider/random.hpp"
