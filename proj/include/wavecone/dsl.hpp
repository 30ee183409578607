#pragma once

#include "wavecone/dsl/builtins.hpp"
#include "wavecone/dsl/lexer.hpp"
#include "wavecone/dsl/parser.hpp"
#include "wavecone/dsl/serialize.hpp"
