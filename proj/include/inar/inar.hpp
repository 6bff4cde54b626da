#pragma once

#include "inar/combinatorics.hpp"
#include "inar/innovations.hpp"
#include "inar/json_io.hpp"
#include "inar/marginal.hpp"
#include "inar/numeric.hpp"
#include "inar/presets.hpp"
#include "inar/process.hpp"
#include "inar/validation.hpp"
