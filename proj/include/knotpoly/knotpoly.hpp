// Umbrella header.

#pragma once

#include "knotpoly/alexander.hpp"
#include "knotpoly/fox.hpp"
#include "knotpoly/freegroup.hpp"
#include "knotpoly/knotio.hpp"
#include "knotpoly/laurent.hpp"
#include "knotpoly/matring.hpp"
#include "knotpoly/obstruction.hpp"
#include "knotpoly/twisted.hpp"
