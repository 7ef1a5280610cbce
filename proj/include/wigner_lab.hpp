#pragma once

#include "wigner_lab/error.hpp"
#include "wigner_lab/grid.hpp"
#include "wigner_lab/states.hpp"
#include "wigner_lab/wigner.hpp"
#include "wigner_lab/hologram.hpp"
#include "wigner_lab/coarse_grain.hpp"
#include "wigner_lab/fisher.hpp"
#include "wigner_lab/io.hpp"
