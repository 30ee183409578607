#pragma once

#include "wavecone/polyalg/faddeev_leverrier.hpp"
#include "wavecone/polyalg/hom_poly.hpp"
#include "wavecone/polyalg/multi_index.hpp"
#include "wavecone/polyalg/poly_matrix.hpp"
#include "wavecone/polyalg/rational.hpp"
#include "wavecone/polyalg/rational_matrix.hpp"
#include "wavecone/polyalg/sampling.hpp"
