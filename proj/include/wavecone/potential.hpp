#pragma once

#include "wavecone/potential/construction.hpp"
#include "wavecone/potential/potential_symbol.hpp"
