#pragma once

#include "hbk/bohr.hpp"
#include "hbk/commands.hpp"
#include "hbk/csv.hpp"
#include "hbk/errors.hpp"
#include "hbk/fuzz.hpp"
#include "hbk/kernel.hpp"
#include "hbk/mapping_classes.hpp"
#include "hbk/rng.hpp"
#include "hbk/series.hpp"
#include "hbk/special_functions.hpp"
#include "hbk/toeplitz.hpp"
