#pragma once

// Umbrella header: self-focusing positions and coherence lengths for
// photon and atom-laser beams.

#include "atomlaser.hpp"
#include "beamsim.hpp"
#include "constants.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "numerics.hpp"
#include "species.hpp"
#include "version.hpp"
