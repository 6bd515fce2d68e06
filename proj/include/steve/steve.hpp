#pragma once

#include "steve/error.hpp"
#include "steve/extraction.hpp"
#include "steve/field.hpp"
#include "steve/io.hpp"
#include "steve/parallel.hpp"
#include "steve/slicing.hpp"
#include "steve/synth.hpp"
#include "steve/tessellation.hpp"
#include "steve/topology.hpp"
#include "steve/vec.hpp"
