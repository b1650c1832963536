#pragma once

// Umbrella header: diamond-lattice polypeptide modeling toolkit.

#include "latfold/amino_acids.hpp"
#include "latfold/chain.hpp"
#include "latfold/errors.hpp"
#include "latfold/folding.hpp"
#include "latfold/geometry.hpp"
#include "latfold/quantum.hpp"
#include "latfold/rama.hpp"
#include "latfold/rational.hpp"
#include "latfold/structure_io.hpp"
#include "latfold/vec3d.hpp"
