#pragma once

#include "wavecone/nulllag/jet.hpp"
#include "wavecone/nulllag/solver.hpp"
