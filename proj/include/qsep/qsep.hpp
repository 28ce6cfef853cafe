// qsep.hpp
// Umbrella header.

#pragma once

#include "analysis.hpp"
#include "bases.hpp"
#include "bit_index.hpp"
#include "bloch.hpp"
#include "certificate.hpp"
#include "criteria.hpp"
#include "decomposer.hpp"
#include "density.hpp"
#include "errors.hpp"
#include "families.hpp"
#include "family_decl.hpp"
#include "io.hpp"
#include "matrix.hpp"
