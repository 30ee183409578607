#pragma once

#include "wavecone/spectral/checks.hpp"
#include "wavecone/spectral/fields.hpp"
#include "wavecone/spectral/grid.hpp"
#include "wavecone/spectral/hardy.hpp"
#include "wavecone/spectral/numeric_symbol.hpp"
#include "wavecone/spectral/records.hpp"
