#pragma once

#include "wavecone/operator/analysis.hpp"
#include "wavecone/operator/operator_symbol.hpp"
