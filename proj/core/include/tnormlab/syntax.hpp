#pragma once

// One-token t-norm descriptions used on the command line:
//
//   min | minimum | prod | product | luk | lukasiewicz | drastic
//   ss:<beta>            Schweizer-Sklar
//   cshelf:<c>           c-shelf
//   osum:[a,e,inner;...] ordinal sum; inner is itself a spec
//   expr:<dsl>           expression in x, y (gexpr:<dsl> adds the zero guard)

#include <string_view>

#include "tnormlab/tnorm.hpp"

namespace tnormlab {

/// Throws InvalidSpec (or dsl::ParseError for a malformed expression).
TNormSpec parse_tnorm_spec(std::string_view text);

/// Parses a decimal number occupying the whole string; throws InvalidSpec.
double parse_number(std::string_view text);

}  // namespace tnormlab
