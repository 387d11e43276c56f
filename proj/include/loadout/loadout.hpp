#ifndef LOADOUT_LOADOUT_HPP
#define LOADOUT_LOADOUT_HPP

#include "loadout/bounds.hpp"
#include "loadout/cells.hpp"
#include "loadout/cyclic.hpp"
#include "loadout/design.hpp"
#include "loadout/errors.hpp"
#include "loadout/interval.hpp"
#include "loadout/matrix.hpp"
#include "loadout/rational.hpp"
#include "loadout/serialize.hpp"
#include "loadout/simplex.hpp"

#endif
